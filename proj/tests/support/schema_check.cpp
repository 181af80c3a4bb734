#include "support/schema_check.hpp"

namespace citefield::testing {

namespace {

using nlohmann::ordered_json;

bool matches_type(const ordered_json& instance, const std::string& type) {
    if (type == "object") return instance.is_object();
    if (type == "array") return instance.is_array();
    if (type == "string") return instance.is_string();
    if (type == "number") return instance.is_number();
    if (type == "integer") return instance.is_number_integer() || instance.is_number_unsigned();
    if (type == "boolean") return instance.is_boolean();
    if (type == "null") return instance.is_null();
    return false;
}

void check(const ordered_json& schema, const ordered_json& instance, const std::string& path,
           std::vector<std::string>& out) {
    if (schema.contains("type")) {
        const ordered_json& type = schema.at("type");
        bool ok = false;
        if (type.is_string()) {
            ok = matches_type(instance, type.get<std::string>());
        } else {
            for (const auto& t : type)
                if (matches_type(instance, t.get<std::string>())) ok = true;
        }
        if (!ok) {
            out.push_back(path + ": type mismatch (got " + std::string(instance.type_name()) +
                          ", want " + type.dump() + ")");
            return;
        }
    }

    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& allowed : schema.at("enum"))
            if (instance == allowed) ok = true;
        if (!ok) out.push_back(path + ": value " + instance.dump() + " not in enum");
    }

    if (instance.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema.at("required"))
                if (!instance.contains(key.get<std::string>()))
                    out.push_back(path + ": missing required key '" + key.get<std::string>() + "'");
        }
        const ordered_json* props =
            schema.contains("properties") ? &schema.at("properties") : nullptr;
        for (const auto& [key, value] : instance.items()) {
            if (props && props->contains(key)) {
                check(props->at(key), value, path + "." + key, out);
            } else if (schema.contains("additionalProperties") &&
                       schema.at("additionalProperties").is_boolean() &&
                       !schema.at("additionalProperties").get<bool>()) {
                out.push_back(path + ": unexpected key '" + key + "'");
            }
        }
    }

    if (instance.is_array() && schema.contains("items")) {
        for (size_t i = 0; i < instance.size(); ++i)
            check(schema.at("items"), instance[i], path + "[" + std::to_string(i) + "]", out);
    }
}

}  // namespace

std::vector<std::string> schema_violations(const ordered_json& schema,
                                           const ordered_json& instance,
                                           const std::string& path) {
    std::vector<std::string> out;
    check(schema, instance, path, out);
    return out;
}

}  // namespace citefield::testing
