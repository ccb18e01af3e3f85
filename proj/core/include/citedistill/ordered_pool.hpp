#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace citedistill {

/// Runs `produce(part, emit)` for parts 0..n-1 on a worker pool and feeds the
/// emitted batches to `consume(part, batch)` on the calling thread, strictly
/// in (part, emission) order. Each part has a bounded queue of `depth`
/// batches, so memory stays at O(threads * depth * batch) no matter how large
/// a part is. An exception thrown by produce() surfaces from this call when
/// the consumer reaches that part; one thrown by consume() stops the pool.
///
/// With threads <= 1 everything runs inline on the calling thread.
template <class Batch, class Produce, class Consume>
void run_ordered(std::size_t parts, unsigned threads, std::size_t depth, Produce&& produce, Consume&& consume) {
  if (threads <= 1 || parts <= 1) {
    for (std::size_t p = 0; p < parts; ++p) {
      produce(p, std::function<void(Batch&&)>([&](Batch&& b) { consume(p, std::move(b)); }));
    }
    return;
  }

  struct Channel {
    std::deque<Batch> queue;
    bool done = false;
    std::exception_ptr error;
  };
  struct Aborted {};

  std::mutex mu;
  std::condition_variable cv;
  std::vector<Channel> channels(parts);
  std::atomic<std::size_t> next{0};
  bool abort = false;
  if (depth == 0) depth = 1;

  auto worker = [&] {
    for (;;) {
      const std::size_t p = next.fetch_add(1);
      if (p >= parts) return;
      try {
        produce(p, std::function<void(Batch&&)>([&](Batch&& b) {
                  std::unique_lock lock(mu);
                  cv.wait(lock, [&] { return abort || channels[p].queue.size() < depth; });
                  if (abort) throw Aborted{};
                  channels[p].queue.push_back(std::move(b));
                  cv.notify_all();
                }));
        std::lock_guard lock(mu);
        channels[p].done = true;
        cv.notify_all();
      } catch (const Aborted&) {
        return;
      } catch (...) {
        std::lock_guard lock(mu);
        channels[p].error = std::current_exception();
        channels[p].done = true;
        cv.notify_all();
      }
    }
  };

  std::vector<std::jthread> pool;
  const auto stop = [&] {
    {
      std::lock_guard lock(mu);
      abort = true;
    }
    cv.notify_all();
    pool.clear();  // joins
  };

  const unsigned n_workers = static_cast<unsigned>(std::min<std::size_t>(threads, parts));
  pool.reserve(n_workers);
  for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);

  try {
    for (std::size_t p = 0; p < parts; ++p) {
      for (;;) {
        std::unique_lock lock(mu);
        auto& ch = channels[p];
        cv.wait(lock, [&] { return !ch.queue.empty() || ch.done; });
        if (!ch.queue.empty()) {
          Batch b = std::move(ch.queue.front());
          ch.queue.pop_front();
          cv.notify_all();
          lock.unlock();
          consume(p, std::move(b));
          continue;
        }
        if (ch.error) std::rethrow_exception(ch.error);
        break;
      }
    }
  } catch (...) {
    stop();
    throw;
  }
  stop();
}

}  // namespace citedistill
