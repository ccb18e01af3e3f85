#pragma once

#include <string_view>
#include <variant>

#include "citedistill/model.hpp"

namespace citedistill {

enum class SkipReason {
  MalformedJson,
  NotAnObject,
  MissingId,
  InvalidId,
  MissingEndpoint,
  MissingRelType,
};

std::string_view to_string(SkipReason r) noexcept;

struct Skip {
  SkipReason reason;
  friend bool operator==(const Skip&, const Skip&) = default;
};

/// A relation that parsed fine but is not a citation.
struct NotCites {
  std::string rel_type_name;
  std::string rel_type_type;
  friend bool operator==(const NotCites&, const NotCites&) = default;
};

using PublicationOutcome = std::variant<PublicationFragment, Skip>;
using RelationOutcome = std::variant<RelationRecord, NotCites, Skip>;

inline constexpr std::string_view kCitesName = "Cites";
inline constexpr std::string_view kCitationType = "citation";
inline constexpr std::string_view kAuthorSeparator = "; ";

/// Parses one publication line and flattens it:
///   id               -> openaireId (required, non-empty, no newline)
///   pids[]           -> doi: value of the first entry whose scheme is "doi", any case
///   mainTitle        -> title
///   authors[]        -> authors: fullName values joined with "; "
///   descriptions[]   -> description: first string
///   publicationDate  -> date, verbatim
///   container.name   -> container
///   language.label   -> language (falls back to language.code, or a bare string)
/// Missing, null, empty-array and wrong-typed optional fields are absent.
/// Unknown fields are ignored. Bad input never throws.
PublicationOutcome parse_publication(std::string_view raw);

/// Parses one relation line. Only relType.name == "Cites" (exact) yields a
/// RelationRecord; other well-formed relations yield NotCites. Bad input never
/// throws.
RelationOutcome parse_relation(std::string_view raw);

}  // namespace citedistill
