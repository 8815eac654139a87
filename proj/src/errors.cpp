/* Copyright 2026 The qkdlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "qkdlab/errors.hpp"

#include <fmt/format.h>

#include <utility>

namespace qkdlab {

ConfigError::ConfigError(std::string source, std::size_t line, std::string field,
                         const std::string& message)
    : std::runtime_error(fmt::format("{}:{}: field '{}': {}", source, line, field, message)),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)) {}

}  // namespace qkdlab
