#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evrec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one subcommand (ingest, train, neighbors, expand, index, search,
/// eval). `args` excludes the program name. Results go to `out`; warnings,
/// per-line ingest errors and usage text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace evrec::cli
