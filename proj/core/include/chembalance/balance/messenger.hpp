#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <memory>
#include <mutex>
#include <vector>

namespace chembalance::balance {

enum class MessageTag : int { problems = 1, solutions = 2 };

/// Reliable, ordered point-to-point channels between ranks plus an
/// all-gather that doubles as a barrier.
class Messenger {
 public:
  virtual ~Messenger() = default;

  virtual int rank() const noexcept = 0;
  virtual int size() const noexcept = 0;

  virtual void send(int to, MessageTag tag, std::vector<std::byte> payload) = 0;
  /// Blocks for the next message from `from`. Throws ProtocolError if that
  /// message carries a different tag, MessengerError if the run was aborted.
  virtual std::vector<std::byte> receive(int from, MessageTag tag) = 0;
  virtual std::vector<double> all_gather(double value) = 0;
  /// True if any message addressed to this rank is still undelivered.
  virtual bool has_pending() = 0;
  /// Wakes every blocked peer with MessengerError.
  virtual void abort() noexcept = 0;
};

/// Shared state for in-process workers. Each worker thread uses its own
/// endpoint; the hub outlives all of them.
class LocalHub {
 public:
  explicit LocalHub(int size);

  int size() const noexcept { return size_; }
  std::unique_ptr<Messenger> endpoint(int rank);
  bool aborted() const;
  /// Wakes every blocked endpoint with MessengerError.
  void abort() noexcept;

 private:
  friend class LocalMessenger;

  struct Message {
    MessageTag tag;
    std::vector<std::byte> payload;
  };

  int size_;
  mutable std::mutex mutex_;
  std::condition_variable cv_;
  bool aborted_ = false;
  // mailbox_[to * size_ + from]
  std::vector<std::deque<Message>> mailbox_;
  std::vector<double> gather_slots_;
  std::vector<double> gather_results_[2];
  int gather_arrived_ = 0;
  long gather_generation_ = 0;
};

}  // namespace chembalance::balance
