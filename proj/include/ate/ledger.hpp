#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "ate/error.hpp"
#include "ate/run_record.hpp"

namespace ate {

/// Append-only `runs.jsonl` in an output directory. Appends take an
/// exclusive advisory lock; reads take a shared one.
class Ledger {
 public:
  explicit Ledger(std::filesystem::path dir) : dir_(std::move(dir)), path_(dir_ / "runs.jsonl") {}

  const std::filesystem::path& dir() const { return dir_; }
  const std::filesystem::path& path() const { return path_; }

  std::vector<RunRecord> read() const {
    if (!std::filesystem::exists(path_)) return {};
    LockedFile file(path_, O_RDONLY, LOCK_SH);
    return parse(file.read_all());
  }

  bool contains(const std::string& run_id) const {
    for (const auto& r : read()) {
      if (r.run_id == run_id) return true;
    }
    return false;
  }

  /// Appends unless the id is already present and `force` is off; the check
  /// and the write happen under the same lock.
  void append(const RunRecord& record, bool force = false) const {
    std::filesystem::create_directories(dir_);
    LockedFile file(path_, O_RDWR | O_CREAT | O_APPEND, LOCK_EX);
    if (!force) {
      for (const auto& r : parse(file.read_all())) {
        if (r.run_id == record.run_id) {
          throw Error(ErrorKind::DuplicateRun, "run " + record.run_id + " already in " + path_.string());
        }
      }
    }
    file.write(to_json(record).dump() + "\n");
  }

 private:
  class LockedFile {
   public:
    LockedFile(const std::filesystem::path& path, int flags, int lock) {
      fd_ = ::open(path.c_str(), flags | O_CLOEXEC, 0644);
      if (fd_ < 0) throw Error(ErrorKind::Io, "cannot open " + path.string());
      if (::flock(fd_, lock) != 0) {
        ::close(fd_);
        throw Error(ErrorKind::Io, "cannot lock " + path.string());
      }
    }
    ~LockedFile() {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
    LockedFile(const LockedFile&) = delete;
    LockedFile& operator=(const LockedFile&) = delete;

    std::string read_all() const {
      std::string out;
      char buffer[1 << 14];
      ::lseek(fd_, 0, SEEK_SET);
      ssize_t n;
      while ((n = ::read(fd_, buffer, sizeof buffer)) > 0) out.append(buffer, static_cast<std::size_t>(n));
      if (n < 0) throw Error(ErrorKind::Io, "ledger read failed");
      return out;
    }

    void write(const std::string& line) const {
      std::size_t done = 0;
      while (done < line.size()) {
        ssize_t n = ::write(fd_, line.data() + done, line.size() - done);
        if (n < 0) throw Error(ErrorKind::Io, "ledger append failed");
        done += static_cast<std::size_t>(n);
      }
      ::fsync(fd_);
    }

   private:
    int fd_ = -1;
  };

  std::vector<RunRecord> parse(const std::string& content) const {
    std::vector<RunRecord> out;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < content.size()) {
      std::size_t eol = content.find('\n', pos);
      if (eol == std::string::npos) eol = content.size();
      ++line_no;
      std::string_view line(content.data() + pos, eol - pos);
      pos = eol + 1;
      if (line.empty()) continue;
      try {
        out.push_back(run_record_from_json(nlohmann::json::parse(line)));
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, path_.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
    return out;
  }

  std::filesystem::path dir_;
  std::filesystem::path path_;
};

}  // namespace ate
