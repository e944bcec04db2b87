/******************************************************************************
 * Copyright 2026 The Panocam Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

namespace panocam {

std::string read_text_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames over `path`, so readers
/// never observe a partially written document.
void write_text_file_atomic(const std::filesystem::path& path, const std::string& text);

/// Throws kIo when unreadable, kParse on malformed JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);
nlohmann::json parse_json(const std::string& text, const std::string& origin);

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump_json(const nlohmann::ordered_json& j);
void write_json_file_atomic(const std::filesystem::path& path, const nlohmann::ordered_json& j);

}  // namespace panocam
