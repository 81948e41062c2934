#ifndef PMIX_TESTS_SUPPORT_HPP
#define PMIX_TESTS_SUPPORT_HPP

#include <array>
#include <map>
#include <string>

#include <pmix/chartable.hpp>
#include <pmix/group.hpp>
#include <pmix/io.hpp>

namespace test
{

inline std::string const data_dir = PMIX_DATA_DIR;

inline std::array<char const *, 8> const corpus = {"trivial", "c2",  "s3",     "s4",
                                                   "a4",      "a5",  "psl2_7", "sl2_8"};

inline std::string group_path(std::string const &name)
{
  return data_dir + "/groups/" + name + ".json";
}

inline std::string fixture_path(std::string const &name)
{
  return data_dir + "/fixtures/" + name;
}

inline pmix::GroupTable const &group(std::string const &name)
{
  static std::map<std::string, pmix::GroupTable> cache;
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, pmix::build_group(pmix::parse_group_file(group_path(name)))).first;
  return it->second;
}

inline pmix::CharTable const &table(std::string const &name)
{
  static std::map<std::string, pmix::CharTable> cache;
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, pmix::dixon_char_table(group(name))).first;
  return it->second;
}

} // namespace test

#endif
