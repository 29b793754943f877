// Helpers for tests that drive the installed CLI binary. The binary path
// comes from the ROUGEKIT_BIN environment variable (set by CTest) or from
// argv when run by hand.
#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace cli_support {

inline std::string binary_path(const char* fallback = nullptr) {
  if (const char* env = std::getenv("ROUGEKIT_BIN")) return env;
  if (fallback != nullptr) return fallback;
  return {};
}

// Runs a shell command, returns its exit status (not the raw wait value).
inline int run(const std::string& command) {
  const int rc = std::system(command.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -1;
}

inline int run_quiet(const std::string& command) {
  return run(command + " > /dev/null 2>&1");
}

inline std::filesystem::path fresh_dir(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::current_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace cli_support
