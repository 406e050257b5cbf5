// Command-line front end: solve, oracle, verify, field and levels.
#pragma once

namespace locus::cli {

enum ExitCode : int { kOk = 0, kUnresolved = 1, kInvalidInput = 2, kVerifyFail = 3 };

int run(int argc, char** argv);

}  // namespace locus::cli
