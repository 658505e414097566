// Copyright 2026 The qst-control Authors.
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

#ifndef QST_ACTIONS_HPP_
#define QST_ACTIONS_HPP_

#include <array>
#include <stdexcept>
#include <string>

namespace qst {

inline constexpr int kNumActions = 16;

/// One on/off pattern of the six controllable sites: the first three sites
/// of the chain (left_mask, site 1 first) and the last three (right_mask,
/// site N-2 first). Admissible patterns: all off, all on, or a nonempty
/// subset of one end with the other end fully off.
struct ControlAction {
  int id = 0;
  std::array<bool, 3> left_mask{false, false, false};
  std::array<bool, 3> right_mask{false, false, false};
};

/// The 16 admissible actions in canonical order:
///   id 0      all controls off
///   ids 1-7   left-only subsets, binary order of (site1,site2,site3),
///             site 1 = least significant bit
///   ids 8-14  right-only subsets, binary order of (site N-2,N-1,N)
///   id 15     all controls on
class ActionCatalog {
 public:
  ActionCatalog() {
    for (int id = 0; id < kNumActions; ++id) {
      ControlAction a;
      a.id = id;
      if (id == 15) {
        a.left_mask = {true, true, true};
        a.right_mask = {true, true, true};
      } else if (id >= 8) {
        const int bits = id - 7;
        a.right_mask = {(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0};
      } else if (id >= 1) {
        a.left_mask = {(id & 1) != 0, (id & 2) != 0, (id & 4) != 0};
      }
      actions_[id] = a;
    }
  }

  const ControlAction& operator[](int id) const { return at(id); }

  const ControlAction& at(int id) const {
    if (id < 0 || id >= kNumActions)
      throw std::out_of_range("action id out of range: " + std::to_string(id));
    return actions_[id];
  }

  const std::array<ControlAction, kNumActions>& actions() const {
    return actions_;
  }

  static constexpr int size() { return kNumActions; }

 private:
  std::array<ControlAction, kNumActions> actions_;
};

inline ActionCatalog build_action_catalog() { return ActionCatalog{}; }

}  // namespace qst

#endif  // QST_ACTIONS_HPP_
