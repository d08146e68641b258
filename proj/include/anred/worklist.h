// Copyright 2026 The anred Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANRED_WORKLIST_H_
#define ANRED_WORKLIST_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <random>
#include <utility>

namespace anred {

// Processing order of a fixpoint worklist. Fixpoint results never depend on
// it; it exists so tests can check exactly that.
struct WorklistOrder {
  enum class Kind { kFifo, kLifo, kShuffled };
  Kind kind = Kind::kFifo;
  std::uint64_t seed = 0;

  static WorklistOrder fifo() { return {Kind::kFifo, 0}; }
  static WorklistOrder lifo() { return {Kind::kLifo, 0}; }
  static WorklistOrder shuffled(std::uint64_t seed) {
    return {Kind::kShuffled, seed};
  }
};

template <typename T>
class Worklist {
 public:
  explicit Worklist(WorklistOrder order = {})
      : order_(order), rng_(order.seed) {}

  void push(T value) { items_.push_back(std::move(value)); }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }

  T pop() {
    switch (order_.kind) {
      case WorklistOrder::Kind::kFifo: {
        T v = std::move(items_.front());
        items_.pop_front();
        return v;
      }
      case WorklistOrder::Kind::kShuffled: {
        std::size_t i = rng_() % items_.size();
        std::swap(items_[i], items_.back());
        break;
      }
      case WorklistOrder::Kind::kLifo:
        break;
    }
    T v = std::move(items_.back());
    items_.pop_back();
    return v;
  }

 private:
  WorklistOrder order_;
  std::mt19937_64 rng_;
  std::deque<T> items_;
};

}  // namespace anred

#endif  // ANRED_WORKLIST_H_
