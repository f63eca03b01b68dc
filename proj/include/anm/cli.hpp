#ifndef ANM_CLI_HPP
#define ANM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "anm/model.hpp"

namespace anm {

namespace exit_code {
inline constexpr int x_to_y = 0;
inline constexpr int y_to_x = 1;
inline constexpr int abstain = 2;
inline constexpr int failure = 3;
inline constexpr int usage = 64;
} // namespace exit_code

int exit_code_for(Direction d);

/// Entry point of the `anm` tool; args[0] is the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace anm

#endif
