#pragma once

namespace fns {

// Exit codes: 0 all verdicts pass, 1 failed verdict, 2 usage/config error,
// 3 numerical blow-up.
int cli_main(int argc, const char* const* argv);

}  // namespace fns
