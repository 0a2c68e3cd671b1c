#include "chembalance/balance/messenger.hpp"

#include <string>

#include "chembalance/error.hpp"

namespace chembalance::balance {

class LocalMessenger final : public Messenger {
 public:
  LocalMessenger(LocalHub& hub, int rank) : hub_(hub), rank_(rank) {}

  int rank() const noexcept override { return rank_; }
  int size() const noexcept override { return hub_.size_; }

  void send(int to, MessageTag tag, std::vector<std::byte> payload) override {
    check_peer(to);
    {
      std::lock_guard lock(hub_.mutex_);
      if (hub_.aborted_) throw MessengerError("send after abort");
      hub_.mailbox_[slot(to, rank_)].push_back({tag, std::move(payload)});
    }
    hub_.cv_.notify_all();
  }

  std::vector<std::byte> receive(int from, MessageTag tag) override {
    check_peer(from);
    std::unique_lock lock(hub_.mutex_);
    auto& box = hub_.mailbox_[slot(rank_, from)];
    hub_.cv_.wait(lock, [&] { return hub_.aborted_ || !box.empty(); });
    if (hub_.aborted_) throw MessengerError("receive aborted");
    if (box.front().tag != tag) {
      throw ProtocolError("rank " + std::to_string(rank_) + " expected tag " +
                          std::to_string(static_cast<int>(tag)) + " from rank " +
                          std::to_string(from) + ", got tag " +
                          std::to_string(static_cast<int>(box.front().tag)));
    }
    auto payload = std::move(box.front().payload);
    box.pop_front();
    return payload;
  }

  std::vector<double> all_gather(double value) override {
    std::unique_lock lock(hub_.mutex_);
    if (hub_.aborted_) throw MessengerError("all_gather after abort");
    const long generation = hub_.gather_generation_;
    hub_.gather_slots_[rank_] = value;
    if (++hub_.gather_arrived_ == hub_.size_) {
      hub_.gather_results_[generation % 2] = hub_.gather_slots_;
      hub_.gather_arrived_ = 0;
      ++hub_.gather_generation_;
      lock.unlock();
      hub_.cv_.notify_all();
      lock.lock();
    } else {
      hub_.cv_.wait(lock, [&] {
        return hub_.aborted_ || hub_.gather_generation_ != generation;
      });
      if (hub_.gather_generation_ == generation) throw MessengerError("all_gather aborted");
    }
    return hub_.gather_results_[generation % 2];
  }

  bool has_pending() override {
    std::lock_guard lock(hub_.mutex_);
    for (int from = 0; from < hub_.size_; ++from) {
      if (!hub_.mailbox_[slot(rank_, from)].empty()) return true;
    }
    return false;
  }

  void abort() noexcept override { hub_.abort(); }

 private:
  std::size_t slot(int to, int from) const noexcept {
    return static_cast<std::size_t>(to) * hub_.size_ + from;
  }
  void check_peer(int peer) const {
    if (peer < 0 || peer >= hub_.size_ || peer == rank_) {
      throw MessengerError("invalid peer rank " + std::to_string(peer));
    }
  }

  LocalHub& hub_;
  int rank_;
};

LocalHub::LocalHub(int size)
    : size_(size),
      mailbox_(static_cast<std::size_t>(size) * size),
      gather_slots_(size, 0.0) {
  if (size < 1) throw MessengerError("hub needs at least one rank");
}

std::unique_ptr<Messenger> LocalHub::endpoint(int rank) {
  if (rank < 0 || rank >= size_) throw MessengerError("invalid rank " + std::to_string(rank));
  return std::make_unique<LocalMessenger>(*this, rank);
}

void LocalHub::abort() noexcept {
  {
    std::lock_guard lock(mutex_);
    aborted_ = true;
  }
  cv_.notify_all();
}

bool LocalHub::aborted() const {
  std::lock_guard lock(mutex_);
  return aborted_;
}

}  // namespace chembalance::balance
