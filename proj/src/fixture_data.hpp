#pragma once

#include <string_view>

namespace civtm::detail {

// Contents of fixtures/<name>, compiled in; nullptr when not shipped.
const char* embedded_fixture(std::string_view name);

}  // namespace civtm::detail
