// SPDX-License-Identifier: Apache-2.0

#include "foodkg/kg/props.hpp"

#include "foodkg/common/text.hpp"

namespace foodkg::kg {

std::string format_prop_value(const PropValue& value)
{
    struct Visitor {
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(double d) const { return text::format_number(d); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, value);
}

std::string format_props(const Props& props)
{
    std::string out;
    for (const auto& [key, value] : props) {
        if (!out.empty())
            out += ", ";
        out += key;
        out += '=';
        out += format_prop_value(value);
    }
    return out;
}

std::optional<double> get_number(const Props& props, std::string_view key)
{
    const auto it = props.find(key);
    if (it == props.end())
        return std::nullopt;
    if (const auto* d = std::get_if<double>(&it->second))
        return *d;
    return std::nullopt;
}

std::optional<std::string> get_string(const Props& props, std::string_view key)
{
    const auto it = props.find(key);
    if (it == props.end())
        return std::nullopt;
    if (const auto* s = std::get_if<std::string>(&it->second))
        return *s;
    return std::nullopt;
}

std::optional<bool> get_bool(const Props& props, std::string_view key)
{
    const auto it = props.find(key);
    if (it == props.end())
        return std::nullopt;
    if (const auto* b = std::get_if<bool>(&it->second))
        return *b;
    return std::nullopt;
}

} // namespace foodkg::kg
