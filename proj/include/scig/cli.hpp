#pragma once

namespace scig {

/// Entry point behind the command-line tool. Subcommands:
/// generate, estimate-sdm, select-graph, theory, roc.
/// Returns 0 on success, 1 on usage errors, 2 on numeric/model errors.
int run_cli(int argc, const char* const* argv);

}  // namespace scig
