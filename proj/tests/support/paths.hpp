#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace storm::test {

inline const std::string z3_binary = STORM_TEST_Z3;
inline const std::filesystem::path storm_forge_binary = STORM_TEST_FORGE;
inline const std::filesystem::path corpus_dir = STORM_TEST_CORPUS;

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir
{
 public:
  explicit TempDir(const std::string& tag)
  {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0;; ++i)
    {
      d_path = base / ("storm-test-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(i));
      if (std::filesystem::create_directory(d_path)) break;
    }
  }
  ~TempDir()
  {
    std::error_code ec;
    std::filesystem::remove_all(d_path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return d_path; }
  std::filesystem::path operator/(const std::string& name) const { return d_path / name; }

 private:
  std::filesystem::path d_path;
};

inline std::string
slurp(const std::filesystem::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void
spit(const std::filesystem::path& p, const std::string& text)
{
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace storm::test
