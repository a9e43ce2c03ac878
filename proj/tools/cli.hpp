#ifndef DSDKM_TOOLS_CLI_HPP
#define DSDKM_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace dsdkm::cli {

/**
 * Runs one `dsdkm` invocation. `args` excludes the program name.
 *
 * Returns 0 only if every requested output was written. Validation errors
 * are reported before any output path is touched.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dsdkm::cli

#endif
