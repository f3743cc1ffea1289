#pragma once

namespace kq {

// Entry point of the kq binary; exit codes: 0 success, 1 usage error,
// 2 invariant violation, 3 resource guard.
int cli_main(int argc, char** argv);

} // namespace kq
