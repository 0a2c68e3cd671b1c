#pragma once

namespace chembalance {

/// CPU time consumed by the calling thread, in seconds. Unaffected by time
/// the thread spends blocked or descheduled.
double thread_cpu_seconds() noexcept;

/// Monotonic wall clock, in seconds.
double wall_seconds() noexcept;

class ThreadCpuTimer {
 public:
  ThreadCpuTimer() noexcept : start_(thread_cpu_seconds()) {}
  double elapsed() const noexcept { return thread_cpu_seconds() - start_; }
  void reset() noexcept { start_ = thread_cpu_seconds(); }

 private:
  double start_;
};

}  // namespace chembalance
