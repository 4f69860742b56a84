#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace gmv {

enum class Theory { PL, S4, S4_2, S5 };

inline constexpr std::array<Theory, 4> kAllTheories = {Theory::PL, Theory::S4, Theory::S4_2,
                                                       Theory::S5};

// Lower-case CLI spelling: pl, s4, s4.2, s5.
std::string to_string(Theory t);
std::optional<Theory> theory_from_string(std::string_view s);

}  // namespace gmv
