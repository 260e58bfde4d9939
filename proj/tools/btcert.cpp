/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "btcert/cli.hpp"

int main(int argc, char** argv) { return btcert::cli::main(argc, argv); }
