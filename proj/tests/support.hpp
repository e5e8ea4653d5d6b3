#pragma once

#include <functional>
#include <optional>
#include <string>

#include "lincon/errors.hpp"
#include "lincon/io.hpp"
#include "lincon/polyeval.hpp"

namespace support {

inline lincon::io::ModelSpec fixture_spec(const std::string& name) {
  return lincon::io::model_from_json(
      lincon::io::read_json(lincon::default_fixture_root() / "models" / (name + ".json")));
}

inline lincon::LinearModel fixture_model(const std::string& name) { return fixture_spec(name).model; }

// Kind of the lincon::Error thrown by f, or nullopt when it returns.
inline std::optional<lincon::ErrorKind> error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const lincon::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace support
