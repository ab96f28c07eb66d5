// Copyright 2026 The sinrcap Authors
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

#pragma once

#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace sinrcap {

using WarningHandler = std::function<void(const std::string&)>;

namespace detail {

struct WarningSink {
  std::mutex mutex;
  WarningHandler handler = [](const std::string& msg) {
    std::cerr << "warning: " << msg << '\n';
  };
};

inline WarningSink& warning_sink() {
  static WarningSink sink;
  return sink;
}

}  // namespace detail

// Replaces the process-wide warning handler and returns the previous one.
inline WarningHandler set_warning_handler(WarningHandler handler) {
  auto& sink = detail::warning_sink();
  std::lock_guard lock(sink.mutex);
  std::swap(sink.handler, handler);
  return handler;
}

inline void warn(const std::string& message) {
  auto& sink = detail::warning_sink();
  std::lock_guard lock(sink.mutex);
  if (sink.handler) sink.handler(message);
}

// RAII capture of warnings, mostly for tests and the CLI summary.
class ScopedWarningCapture {
 public:
  ScopedWarningCapture()
      : previous_(set_warning_handler(
            [this](const std::string& msg) { messages_.push_back(msg); })) {}
  ~ScopedWarningCapture() { set_warning_handler(std::move(previous_)); }

  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
  WarningHandler previous_;
};

}  // namespace sinrcap
