#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "cachelab/kernel.hpp"

namespace cachelab {

/// Malformed trace input. line() is 1-based; 0 when not tied to a line.
class TraceError : public std::runtime_error {
 public:
  TraceError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Trace file format: ASCII, LF line endings, one request per line
//
//     time,content_id[,size_bytes]
//
// with non-negative decimal integers and non-decreasing time. Blank lines and
// lines starting with '#' are skipped. Times are kept as written.

RequestStream read_trace(std::istream& in);
void write_trace(std::ostream& out, const RequestStream& stream);

RequestStream load_trace(const std::filesystem::path& path);
void save_trace(const RequestStream& stream, const std::filesystem::path& path);

}  // namespace cachelab
