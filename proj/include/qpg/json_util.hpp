#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "qpg/numerics.hpp"

namespace qpg::detail {

/// Reads j[key] as a nonnegative integer no larger than `limit`.
inline std::size_t read_count(const nlohmann::json& j, const char* key, std::size_t limit) {
  if (!j.contains(key)) throw StructuralError(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw StructuralError(std::string("field '") + key + "' must be a nonnegative integer");
  const auto x = v.get<std::size_t>();
  if (x > limit)
    throw StructuralError(std::string("field '") + key + "' exceeds " + std::to_string(limit));
  return x;
}

}  // namespace qpg::detail
