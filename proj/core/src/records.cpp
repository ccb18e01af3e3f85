#include "citedistill/records.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

namespace citedistill {

using nlohmann::json;

std::string_view to_string(SkipReason r) noexcept {
  switch (r) {
    case SkipReason::MalformedJson: return "MalformedJson";
    case SkipReason::NotAnObject: return "NotAnObject";
    case SkipReason::MissingId: return "MissingId";
    case SkipReason::InvalidId: return "InvalidId";
    case SkipReason::MissingEndpoint: return "MissingEndpoint";
    case SkipReason::MissingRelType: return "MissingRelType";
  }
  return "Unknown";
}

namespace {

json parse_object(std::string_view raw) {
  return json::parse(raw.begin(), raw.end(), nullptr, /*allow_exceptions=*/false);
}

const json* member(const json& obj, std::string_view key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::optional<std::string> string_member(const json& obj, std::string_view key) {
  const json* v = member(obj, key);
  if (v == nullptr || !v->is_string()) return std::nullopt;
  return v->get<std::string>();
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::optional<std::string> extract_doi(const json& rec) {
  const json* pids = member(rec, "pids");
  if (pids == nullptr || !pids->is_array()) return std::nullopt;
  for (const auto& pid : *pids) {
    const json* scheme = member(pid, "scheme");
    if (scheme == nullptr || !scheme->is_string()) continue;
    if (!iequals(scheme->get_ref<const std::string&>(), "doi")) continue;
    if (auto value = string_member(pid, "value")) return value;
  }
  return std::nullopt;
}

std::optional<std::string> extract_authors(const json& rec) {
  const json* authors = member(rec, "authors");
  if (authors == nullptr || !authors->is_array()) return std::nullopt;
  std::string joined;
  bool any = false;
  for (const auto& author : *authors) {
    const json* full = member(author, "fullName");
    if (full == nullptr || !full->is_string()) continue;
    if (any) joined += kAuthorSeparator;
    joined += full->get_ref<const std::string&>();
    any = true;
  }
  if (!any) return std::nullopt;
  return joined;
}

std::optional<std::string> extract_description(const json& rec) {
  const json* d = member(rec, "descriptions");
  if (d == nullptr) return std::nullopt;
  if (d->is_string()) return d->get<std::string>();
  if (!d->is_array()) return std::nullopt;
  for (const auto& item : *d) {
    if (item.is_string()) return item.get<std::string>();
  }
  return std::nullopt;
}

std::optional<std::string> extract_container(const json& rec) {
  const json* c = member(rec, "container");
  if (c == nullptr) return std::nullopt;
  return string_member(*c, "name");
}

std::optional<std::string> extract_language(const json& rec) {
  const json* lang = member(rec, "language");
  if (lang == nullptr) return std::nullopt;
  if (lang->is_string()) return lang->get<std::string>();
  if (auto label = string_member(*lang, "label")) return label;
  return string_member(*lang, "code");
}

}  // namespace

PublicationOutcome parse_publication(std::string_view raw) {
  const json rec = parse_object(raw);
  if (rec.is_discarded()) return Skip{SkipReason::MalformedJson};
  if (!rec.is_object()) return Skip{SkipReason::NotAnObject};

  auto id = string_member(rec, "id");
  if (!id) {
    const auto it = rec.find("id");
    return Skip{it == rec.end() || it->is_null() ? SkipReason::MissingId : SkipReason::InvalidId};
  }
  if (!OpenAireId::is_valid(*id)) return Skip{SkipReason::InvalidId};

  PublicationFragment frag{OpenAireId(std::move(*id))};
  frag.doi = extract_doi(rec);
  frag.title = string_member(rec, "mainTitle");
  frag.authors = extract_authors(rec);
  frag.description = extract_description(rec);
  frag.date = string_member(rec, "publicationDate");
  frag.container = extract_container(rec);
  frag.language = extract_language(rec);
  return frag;
}

RelationOutcome parse_relation(std::string_view raw) {
  const json rec = parse_object(raw);
  if (rec.is_discarded()) return Skip{SkipReason::MalformedJson};
  if (!rec.is_object()) return Skip{SkipReason::NotAnObject};

  const json* rel_type = member(rec, "relType");
  if (rel_type == nullptr || !rel_type->is_object()) return Skip{SkipReason::MissingRelType};
  auto name = string_member(*rel_type, "name");
  if (!name) return Skip{SkipReason::MissingRelType};
  auto type = string_member(*rel_type, "type").value_or("");

  auto source = string_member(rec, "source");
  auto target = string_member(rec, "target");
  if (!source || !target || !OpenAireId::is_valid(*source) || !OpenAireId::is_valid(*target)) {
    return Skip{SkipReason::MissingEndpoint};
  }

  if (*name != kCitesName) return NotCites{std::move(*name), std::move(type)};
  return RelationRecord{OpenAireId(std::move(*source)), OpenAireId(std::move(*target)),
                        std::move(*name), std::move(type)};
}

}  // namespace citedistill
