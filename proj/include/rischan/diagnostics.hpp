// SPDX-License-Identifier: Apache-2.0
//
// rischan - stochastic channel simulator for RIS-assisted mmWave MIMO links
// Copyright (C) 2026 The rischan authors
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

#ifndef RISCHAN_DIAGNOSTICS_HPP
#define RISCHAN_DIAGNOSTICS_HPP

#include <functional>
#include <iostream>
#include <mutex>
#include <set>
#include <string>

namespace rischan {

using WarningSink = std::function<void(const std::string&)>;

namespace detail {

struct WarningState {
    std::mutex mutex;
    std::set<std::string> seen;
    WarningSink sink = [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
};

inline WarningState& warning_state()
{
    static WarningState state;
    return state;
}

} // namespace detail

/// Replace the warning sink (stderr by default). Returns the previous sink.
inline WarningSink set_warning_sink(WarningSink sink)
{
    auto& st = detail::warning_state();
    std::lock_guard lock(st.mutex);
    std::swap(st.sink, sink);
    st.seen.clear();
    return sink;
}

/// Emits each distinct `key` once per process; hot loops call this freely.
inline void warn_once(const std::string& key, const std::string& message)
{
    auto& st = detail::warning_state();
    std::lock_guard lock(st.mutex);
    if (st.seen.insert(key).second && st.sink)
        st.sink(message);
}

} // namespace rischan

#endif
