#pragma once

#include <cstdlib>
#include <future>
#include <thread>
#include <vector>

namespace fm {

// Worker cap: FRACTALMETER_THREADS if set, otherwise the hardware count.
inline int thread_cap() {
  if (const char* env = std::getenv("FRACTALMETER_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Map fn over [0, n) in parallel chunks and combine the per-chunk results in
// index order, so reductions are deterministic regardless of thread count.
// fn: (begin, end) -> R;  combine: (R& acc, R&& chunk).
template <class R, class Fn, class Combine>
R parallel_chunked(std::size_t n, R init, Fn fn, Combine combine) {
  int workers = thread_cap();
  if (workers <= 1 || n < 2) {
    if (n == 0) return init;
    R chunk = fn(std::size_t{0}, n);
    combine(init, std::move(chunk));
    return init;
  }
  std::size_t nchunks = std::min<std::size_t>(static_cast<std::size_t>(workers) * 4, n);
  std::size_t per = (n + nchunks - 1) / nchunks;
  std::vector<std::future<R>> futs;
  futs.reserve(nchunks);
  for (std::size_t c = 0; c < nchunks; ++c) {
    std::size_t b = c * per;
    std::size_t e = std::min(n, b + per);
    if (b >= e) break;
    futs.push_back(std::async(std::launch::async, [=]() { return fn(b, e); }));
  }
  for (auto& f : futs) combine(init, f.get());
  return init;
}

}  // namespace fm
