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

#ifndef QST_QST_HPP_
#define QST_QST_HPP_

#include "qst/actions.hpp"
#include "qst/chain.hpp"
#include "qst/commands.hpp"
#include "qst/config.hpp"
#include "qst/dqn.hpp"
#include "qst/dynamics.hpp"
#include "qst/environment.hpp"
#include "qst/full_hilbert.hpp"
#include "qst/ga.hpp"
#include "qst/io.hpp"
#include "qst/parallel.hpp"

#endif  // QST_QST_HPP_
