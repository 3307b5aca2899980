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

#include "cli_config.hpp"

#include <json.hpp>

namespace gesture::cli {

namespace {

std::string scalar(const nlohmann::json &v) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    if (v.is_number() || v.is_null())
        return v.dump();
    throw CLI::ConversionError("config values must be scalars or arrays of scalars");
}

} // namespace

std::string JsonConfig::to_config(const CLI::App *app, bool default_also, bool,
                                  std::string) const {
    nlohmann::json j = nlohmann::json::object();
    for (const CLI::Option *opt : app->get_options({})) {
        if (opt->get_lnames().empty() || !opt->get_configurable())
            continue;
        const std::string name = opt->get_lnames().front();
        if (opt->count() > 0)
            j[name] = opt->results().size() == 1 ? nlohmann::json(opt->results().front())
                                                 : nlohmann::json(opt->results());
        else if (default_also && !opt->get_default_str().empty())
            j[name] = opt->get_default_str();
    }
    return j.dump(2) + "\n";
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream &input) const {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(input);
    } catch (const nlohmann::json::exception &e) {
        throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw CLI::ConversionError("config must be a JSON object");

    std::vector<std::string> parents;
    const CLI::App *cur = root_;
    while (cur != nullptr) {
        const auto subs = cur->get_subcommands();
        if (subs.empty())
            break;
        parents.push_back(subs.front()->get_name());
        cur = subs.front();
    }

    std::vector<CLI::ConfigItem> items;
    for (const auto &[key, value] : j.items()) {
        CLI::ConfigItem item;
        item.parents = parents;
        item.name = key;
        if (value.is_array())
            for (const auto &e : value)
                item.inputs.push_back(scalar(e));
        else
            item.inputs.push_back(scalar(value));
        items.push_back(std::move(item));
    }
    return items;
}

} // namespace gesture::cli
