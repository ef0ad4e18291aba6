// Copyright 2026 The embsim Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EMBSIM_PARALLEL_H_
#define EMBSIM_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace embsim {

// Environment variable consulted for the default worker count.
inline constexpr const char* kThreadsEnvVar = "EMBSIM_THREADS";

// Resolves a requested worker count: a positive request wins, otherwise
// EMBSIM_THREADS, otherwise std::thread::hardware_concurrency().
unsigned resolve_threads(unsigned requested);

// Calls body(i) for every i in [0, n) on up to `threads` workers. Work items
// are claimed dynamically, so bodies must write only to slots owned by i.
// The first exception thrown by any body is rethrown on the caller.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace embsim

#endif  // EMBSIM_PARALLEL_H_
