// SPDX-License-Identifier: Apache-2.0
//
// irsdet - IRS-assisted active device detection toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IRSDET_PARALLEL_HPP
#define IRSDET_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace irsdet {

/// Worker count: IRSDET_THREADS when set, hardware concurrency otherwise.
int thread_count();

/// Runs fn(i) for i in [0, n). Work items must be independent and write to
/// disjoint slots; results then do not depend on scheduling. Exceptions from
/// workers are rethrown on the calling thread.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

} // namespace irsdet

#endif
