/*
 *   Copyright 2026 The Gesture Toolkit Authors
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

#ifndef GESTURE_CLI_CONFIG_HPP
#define GESTURE_CLI_CONFIG_HPP

#include <CLI11.hpp>

namespace gesture::cli {

/// Reads a flat JSON object as CLI11 configuration. Keys are option long names
/// without the leading dashes and apply to the subcommand that was selected on
/// the command line; values given as flags take precedence.
class JsonConfig : public CLI::Config {
  public:
    explicit JsonConfig(const CLI::App *root) : root_(root) {}

    std::string to_config(const CLI::App *app, bool default_also, bool write_description,
                          std::string prefix) const override;
    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override;

  private:
    const CLI::App *root_;
};

} // namespace gesture::cli

#endif
