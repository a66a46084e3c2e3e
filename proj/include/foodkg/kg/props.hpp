// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>

namespace foodkg::kg {

/// Property values. Numbers carry their unit in the key name (kcal_per_100g).
using PropValue = std::variant<bool, double, std::string>;
using Props = std::map<std::string, PropValue, std::less<>>;

std::string format_prop_value(const PropValue& value);

/// "k1=v1, k2=v2" in key order; empty string for no props.
std::string format_props(const Props& props);

std::optional<double> get_number(const Props& props, std::string_view key);
std::optional<std::string> get_string(const Props& props, std::string_view key);
std::optional<bool> get_bool(const Props& props, std::string_view key);

} // namespace foodkg::kg
