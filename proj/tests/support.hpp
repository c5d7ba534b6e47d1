#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "lr/exact/matrix.hpp"

namespace testsupport {

// Seeded generators shared by the property tests.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  lr::IntMatrix matrix(std::size_t r, std::size_t c, long lo, long hi) {
    lr::IntMatrix m(r, c);
    for (auto& x : m.a) x = range(lo, hi);
    return m;
  }

  // Product of random elementary operations; determinant +-1.
  lr::IntMatrix unimodular(std::size_t n, int steps = 12) {
    lr::IntMatrix u = lr::IntMatrix::identity(n);
    if (n < 2) return u;
    for (int s = 0; s < steps; ++s) {
      auto i = static_cast<std::size_t>(range(0, static_cast<long>(n) - 1));
      auto j = static_cast<std::size_t>(range(0, static_cast<long>(n) - 2));
      if (j >= i) ++j;
      long f = range(-3, 3);
      for (std::size_t k = 0; k < n; ++k) u(i, k) += f * u(j, k);
      if (range(0, 4) == 0)
        for (std::size_t k = 0; k < n; ++k) std::swap(u(i, k), u(j, k));
    }
    return u;
  }
};

struct ToolRun {
  int status = -1;
  std::string out, err;
};

// Runs the command-line tool with the given arguments through the shell.
inline ToolRun run_tool(const std::string& args) {
  static int counter = 0;
  std::string errfile = "/tmp/lrtool_stderr_" + std::to_string(::getpid()) + "_" + std::to_string(counter++);
  std::string cmd = std::string(LR_TOOL_PATH) + " " + args + " 2>" + errfile;
  ToolRun r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  int st = ::pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  std::ifstream e(errfile);
  std::stringstream ss;
  ss << e.rdbuf();
  r.err = ss.str();
  std::remove(errfile.c_str());
  return r;
}

}  // namespace testsupport
