#include <cstdio>
#include <fstream>
#include <sstream>

#include "resmap/io.hpp"
#include "resmap/search.hpp"
#include "resmap/version.hpp"

namespace resmap {

namespace {

constexpr const char* kMagic = "resmap-checkpoint v1";

}  // namespace

std::string spec_hash(const SearchSpec& spec) {
  // 64-bit FNV-1a over the canonical rendering.
  u64 h = 0xcbf29ce484222325ull;
  for (unsigned char c : spec.canonical()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void save_checkpoint(const std::string& path, const CheckpointState& state) {
  std::ostringstream os;
  os << kMagic << '\n';
  os << "version " << state.code_version << '\n';
  os << "spec " << state.spec_hash << '\n';
  for (const auto& [p, maps] : state.done) os << "done " << p << ' ' << maps << '\n';
  for (const auto& h : state.hits) {
    os << "hit " << h.n << ' ' << h.p << ' ' << h.A << ' ' << h.k << ' ' << h.sign << '\n';
  }
  os << "end\n";
  write_file_atomic(path, os.str());
}

CheckpointState load_checkpoint(const std::string& path, const SearchSpec& spec) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path);
  std::string line;
  if (!std::getline(in, line) || line != kMagic) {
    throw std::runtime_error("not a resmap checkpoint: " + path);
  }
  CheckpointState state;
  bool ended = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "version") {
      ls >> state.code_version;
    } else if (tag == "spec") {
      ls >> state.spec_hash;
    } else if (tag == "done") {
      u64 p = 0, maps = 0;
      if (!(ls >> p >> maps)) throw std::runtime_error("malformed checkpoint line: " + line);
      state.done.emplace_back(p, maps);
    } else if (tag == "hit") {
      u32 n = 0;
      u64 p = 0, a = 0, k = 0;
      int sign = 1;
      if (!(ls >> n >> p >> a >> k >> sign)) throw std::runtime_error("malformed checkpoint line: " + line);
      const PowerMap f(Prime(p), sign * static_cast<i64>(a), static_cast<i64>(k));
      auto h = make_hit(f, n, spec.types);
      if (!h) throw std::runtime_error("checkpoint hit does not reclassify: " + line);
      state.hits.push_back(std::move(*h));
    } else if (tag == "end") {
      ended = true;
      break;
    } else {
      throw std::runtime_error("malformed checkpoint line: " + line);
    }
  }
  if (!ended) throw std::runtime_error("truncated checkpoint " + path);
  if (state.code_version != kVersion) {
    throw CheckpointMismatch("checkpoint written by version " + state.code_version + ", running " + kVersion);
  }
  if (state.spec_hash != spec_hash(spec)) {
    throw CheckpointMismatch("checkpoint belongs to a different search spec");
  }
  return state;
}

}  // namespace resmap
