#ifndef POPUC_HARNESS_RUNNER_HPP
#define POPUC_HARNESS_RUNNER_HPP

// Shared machinery for the randomized runs: a deterministic parallel map over
// trial indices and a bounded resampling loop.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "popuc/harness.hpp"

namespace popuc::detail {

inline constexpr double kResampleSeparation = 1e-6;
inline constexpr std::size_t kMaxAttempts = 32;

double unit_interval(std::mt19937_64& rng);
std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi);

// Interlacing verdict as a trial outcome; a shared point is a failure.
TrialOutcome interlace_outcome(const CyclicSet& a, const CyclicSet& b, double residual);

struct TrialRecord {
  Json instance;
  TrialOutcome outcome;
  std::size_t resamples = 0;
  bool exhausted = false;
};

// Runs fn(index) for index in [0, count) on a small worker pool. Results are
// stored by index, so the reduction order never depends on scheduling.
template <class Fn>
std::vector<TrialRecord> run_trials(std::size_t count, unsigned threads, Fn fn) {
  std::vector<TrialRecord> records(count);
  if (count == 0) return records;
  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        records[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return records;
}

// draw_eval(rng, attempt) -> pair<Json instance, TrialOutcome>.
template <class DrawEval>
TrialRecord resampling_trial(std::mt19937_64& rng, DrawEval draw_eval) {
  TrialRecord record;
  for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Json instance;
    TrialOutcome outcome;
    try {
      auto result = draw_eval(rng, attempt);
      instance = std::move(result.first);
      outcome = std::move(result.second);
    } catch (const Error& e) {
      outcome.status = TrialStatus::Fail;
      outcome.witness = Json{{"error", e.what()}, {"kind", to_string(e.kind())}};
    }
    const bool ill_conditioned =
        outcome.status == TrialStatus::Resample || outcome.separation < kResampleSeparation;
    if (!ill_conditioned) {
      record.instance = std::move(instance);
      record.outcome = std::move(outcome);
      return record;
    }
    ++record.resamples;
    record.instance = std::move(instance);
  }
  record.exhausted = true;
  record.outcome.status = TrialStatus::Resample;
  return record;
}

inline void fold(TheoremReport& report, const std::vector<TrialRecord>& records) {
  std::size_t exhausted = 0;
  for (const auto& rec : records) {
    report.resampled += rec.exhausted ? rec.resamples - 1 : rec.resamples;
    report.absorb(rec.outcome, rec.instance);
    if (rec.exhausted) ++exhausted;
  }
  if (exhausted > 0) {
    report.notes.push_back(std::to_string(exhausted) +
                           " trial(s) skipped after exhausting resampling attempts");
  }
}

}  // namespace popuc::detail

#endif  // POPUC_HARNESS_RUNNER_HPP
