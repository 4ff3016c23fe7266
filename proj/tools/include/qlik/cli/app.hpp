#ifndef QLIK_CLI_APP_HPP_
#define QLIK_CLI_APP_HPP_

#include <iosfwd>

namespace qlik::cli {

// 0 success, 1 usage or input error, 2 fit did not converge.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qlik::cli

#endif  // QLIK_CLI_APP_HPP_
