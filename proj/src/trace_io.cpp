#include "cachelab/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace cachelab {

TraceError::TraceError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

std::uint64_t parse_field(std::string_view field, std::size_t line, const char* name) {
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || end != field.data() + field.size()) {
    throw TraceError(line, std::string("bad ") + name + " field '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

RequestStream read_trace(std::istream& in) {
  RequestStream out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') throw TraceError(line, "CR line ending");
    if (text.empty() || text.front() == '#') continue;

    std::string_view rest(text);
    std::string_view fields[3];
    std::size_t n = 0;
    while (true) {
      if (n == 3) throw TraceError(line, "too many fields");
      const auto comma = rest.find(',');
      fields[n++] = rest.substr(0, comma);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (n < 2) throw TraceError(line, "expected time,content_id[,size_bytes]");

    Request r;
    r.virtual_time = parse_field(fields[0], line, "time");
    r.chunk = ChunkId{parse_field(fields[1], line, "content_id")};
    if (n == 3) r.size_bytes = parse_field(fields[2], line, "size_bytes");
    if (!out.empty() && r.virtual_time < out.back().virtual_time) {
      throw TraceError(line, "time goes backwards");
    }
    out.push_back(r);
  }
  return out;
}

void write_trace(std::ostream& out, const RequestStream& stream) {
  out << "# time,content_id,size_bytes\n";
  for (std::size_t k = 0; k < stream.size(); ++k) {
    const auto& r = stream[k];
    if (k > 0 && r.virtual_time < stream[k - 1].virtual_time) {
      throw TraceError(0, "stream time goes backwards at position " + std::to_string(k));
    }
    out << r.virtual_time << ',' << r.chunk.value;
    if (r.size_bytes != 0) out << ',' << r.size_bytes;
    out << '\n';
  }
}

RequestStream load_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace " + path.string());
  return read_trace(in);
}

void save_trace(const RequestStream& stream, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write trace " + path.string());
  write_trace(out, stream);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace cachelab
