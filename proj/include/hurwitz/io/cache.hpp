#ifndef HURWITZ_IO_CACHE_HPP
#define HURWITZ_IO_CACHE_HPP

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hurwitz/io/job.hpp"
#include "hurwitz/nielsen.hpp"

namespace hurwitz::io {

/// What a cache entry holds: the enumerated tuples (sorted) and, once
/// computed, the tuple-level braid orbit id of each.
struct CachedSpace {
  std::vector<HurwitzTuple> tuples;
  std::optional<std::vector<std::size_t>> orbit_ids;
};

namespace detail {

// Advisory whole-file lock on <key>.lock, released on destruction.
class FileLock {
 public:
  FileLock(const std::filesystem::path& path, bool exclusive) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ >= 0 && ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

  bool held() const noexcept { return fd_ >= 0; }

 private:
  int fd_ = -1;
};

}  // namespace detail

/**
 * On-disk cache of enumerations, one JSON file per cache_key. Tuples are
 * stored as one flat integer array of one-line images. Entries that fail
 * to parse or to revalidate against the job are discarded with a warning.
 */
class Cache {
 public:
  explicit Cache(std::filesystem::path dir, std::ostream* warnings = nullptr)
      : dir_(std::move(dir)), warnings_(warnings) {}

  const std::filesystem::path& directory() const noexcept { return dir_; }

  std::filesystem::path entry_path(const std::string& key) const { return dir_ / (key + ".json"); }

  std::optional<CachedSpace> load(const JobSpec& spec) const {
    const std::string key = cache_key(spec);
    const auto path = entry_path(key);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    std::string text;
    {
      detail::FileLock lock(dir_ / (key + ".lock"), false);
      std::ifstream in(path, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    try {
      return decode(json::parse(text), spec, key);
    } catch (const std::exception& e) {
      warn("discarding corrupt cache entry " + path.string() + ": " + e.what());
      detail::FileLock lock(dir_ / (key + ".lock"), true);
      std::filesystem::remove(path, ec);
      return std::nullopt;
    }
  }

  void store(const JobSpec& spec, const CachedSpace& space) const {
    const std::string key = cache_key(spec);
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
      warn("cannot create cache directory " + dir_.string() + ": " + ec.message());
      return;
    }
    const std::string text = encode(spec, space, key).dump();
    detail::FileLock lock(dir_ / (key + ".lock"), true);
    const auto path = entry_path(key);
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << text;
      if (!out) {
        warn("cannot write cache entry " + tmp.string());
        std::filesystem::remove(tmp, ec);
        return;
      }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) warn("cannot publish cache entry " + path.string() + ": " + ec.message());
  }

 private:
  void warn(const std::string& msg) const {
    if (warnings_) *warnings_ << "warning: " << msg << '\n';
  }

  static json encode(const JobSpec& spec, const CachedSpace& space, const std::string& key) {
    json out;
    out["format_version"] = kFormatVersion;
    out["key"] = key;
    out["degree"] = spec.degree;
    out["base_genus"] = spec.base_genus;
    out["branch_points"] = spec.branch_points;
    out["count"] = space.tuples.size();
    std::vector<std::uint32_t> flat;
    for (const auto& t : space.tuples)
      for (const auto& e : t.entries())
        for (Point x : e.images()) flat.push_back(x);
    out["tuples"] = flat;
    out["orbit_ids"] = space.orbit_ids ? json(*space.orbit_ids) : json(nullptr);
    return out;
  }

  static CachedSpace decode(const json& j, const JobSpec& spec, const std::string& key) {
    auto fail = [](const std::string& why) { throw Error(Errc::SchemaError, why); };
    if (j.at("format_version").get<int>() != kFormatVersion) fail("format_version");
    if (j.at("key").get<std::string>() != key) fail("key mismatch");
    if (j.at("degree").get<std::size_t>() != spec.degree || j.at("base_genus").get<std::size_t>() != spec.base_genus ||
        j.at("branch_points").get<std::size_t>() != spec.branch_points)
      fail("shape mismatch");
    const auto count = j.at("count").get<std::size_t>();
    const auto flat = j.at("tuples").get<std::vector<std::uint32_t>>();
    const std::size_t d = spec.degree;
    const std::size_t per_tuple = 2 * spec.base_genus + spec.branch_points;
    if (flat.size() != count * per_tuple * d) fail("tuple array length");

    CachedSpace space;
    space.tuples.reserve(count);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<Permutation> entries;
      for (std::size_t k = 0; k < per_tuple; ++k, pos += d)
        entries.emplace_back(std::vector<Point>(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                                                flat.begin() + static_cast<std::ptrdiff_t>(pos + d)));
      HurwitzTuple t;
      for (std::size_t h = 0; h < spec.base_genus; ++h) t.handles.emplace_back(entries[2 * h], entries[2 * h + 1]);
      t.branches.assign(entries.begin() + static_cast<std::ptrdiff_t>(2 * spec.base_genus), entries.end());
      // cheap revalidation; generation is rechecked only via membership
      for (const auto& e : entries)
        if (!spec.group.contains(e)) fail("entry outside G");
      if (!relation_product(t).is_identity()) fail("relation fails");
      for (const auto& g : t.branches)
        if (g.is_identity()) fail("trivial branch");
      if (!space.tuples.empty() && !(space.tuples.back() < t)) fail("tuples not strictly sorted");
      t.group_order = spec.group.order();
      space.tuples.push_back(std::move(t));
    }
    if (!j.at("orbit_ids").is_null()) {
      auto ids = j.at("orbit_ids").get<std::vector<std::size_t>>();
      if (ids.size() != count) fail("orbit id count");
      for (auto id : ids)
        if (id >= count) fail("orbit id out of range");
      space.orbit_ids = std::move(ids);
    }
    return space;
  }

  std::filesystem::path dir_;
  std::ostream* warnings_;
};

}  // namespace hurwitz::io

#endif  // HURWITZ_IO_CACHE_HPP
