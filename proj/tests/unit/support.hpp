#pragma once

#include <doctest.h>

#include <functional>
#include <string>

#include "mloop/error.hpp"
#include "mloop/loop.hpp"

namespace support {

inline mloop::ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const mloop::Error& e) {
    return e.kind();
  }
  FAIL("expected an mloop::Error");
  return mloop::ErrorKind::ParseError;
}

inline std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const mloop::Error& e) {
    return e.what();
  }
  return {};
}

inline const mloop::CayleyLoop& z81() {
  static const mloop::CayleyLoop l = mloop::gen_zassenhaus81();
  return l;
}

inline mloop::CayleyLoop abelian(std::initializer_list<int> moduli) {
  return mloop::gen_abelian(std::vector<int>(moduli));
}

}  // namespace support
