// SPDX-License-Identifier: Apache-2.0
//
// cfisac: cell-free ISAC simulator with a proactive monitor
// Copyright (C) 2026 The cfisac authors
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

#pragma once

namespace cfisac
{

// serial is the reference path; parallel distributes independent items over OpenMP
// threads. Both write per-item results to fixed slots and reduce them in index order,
// so they return bit-identical results.
enum class ExecPolicy
{
    serial,
    parallel
};

// Sets the OpenMP team size for later parallel kernels (n <= 0 keeps the runtime default).
void set_thread_count(int n);
int thread_count();

} // namespace cfisac
