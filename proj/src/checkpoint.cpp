#include "cskge/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "cskge/error.hpp"

namespace cskge {

namespace {

constexpr char kMagic[8] = {'C', 'S', 'K', 'G', 'E', 'B', '0', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

void put_real(std::ostream& out, Real v) {
  static_assert(sizeof(Real) == 8);
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

void put_string(std::ostream& out, const std::string& s) {
  put_u64(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void put_matrix(std::ostream& out, const Matrix& m) {
  put_u64(out, static_cast<std::uint64_t>(m.rows()));
  put_u64(out, static_cast<std::uint64_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) put_real(out, m(i, j));
}

struct Reader {
  std::ifstream in;
  std::string path;

  [[noreturn]] void fail(const std::string& msg) const {
    throw_error(ErrorCategory::Parse, path + ": " + msg);
  }

  void bytes(char* dst, std::size_t n) {
    in.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) fail("truncated checkpoint");
  }

  std::uint64_t u64() {
    char buf[8];
    bytes(buf, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
  }

  Real real() { return std::bit_cast<Real>(u64()); }

  std::string str() {
    std::uint64_t n = u64();
    if (n > (1ull << 24)) fail("implausible string length");
    std::string s(n, '\0');
    bytes(s.data(), n);
    return s;
  }

  Matrix matrix() {
    std::uint64_t rows = u64();
    std::uint64_t cols = u64();
    if (rows > (1ull << 24) || cols > (1ull << 24)) fail("implausible matrix shape");
    Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) m(i, j) = real();
    return m;
  }
};

}  // namespace

Checkpoint make_checkpoint(const KnowledgeGraph& graph, TrainState state,
                           std::map<std::string, std::string> config) {
  Checkpoint ckpt;
  ckpt.concept_hash = graph.concepts().content_hash();
  ckpt.relation_hash = graph.relations().content_hash();
  ckpt.config = std::move(config);
  ckpt.state = std::move(state);
  return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_error(ErrorCategory::Io, "cannot write " + path.string());

  out.write(kMagic, sizeof(kMagic));
  put_u64(out, ckpt.concept_hash);
  put_u64(out, ckpt.relation_hash);

  put_u64(out, ckpt.config.size());
  for (const auto& [key, value] : ckpt.config) {
    put_string(out, key);
    put_string(out, value);
  }

  put_matrix(out, ckpt.state.space.concepts);
  put_matrix(out, ckpt.state.space.relations);

  for (SemanticClass c : kAllClasses) {
    bool present = ckpt.state.resources.has(c);
    put_u64(out, present ? 1 : 0);
    if (!present) continue;
    put_matrix(out, ckpt.state.resources.vectors(c));
    const auto& cov = ckpt.state.resources.coverage(c);
    put_u64(out, cov.size());
    for (std::uint8_t f : cov) out.put(static_cast<char>(f));
  }

  put_u64(out, ckpt.state.transr.has_value() ? 1 : 0);
  if (ckpt.state.transr) {
    put_matrix(out, ckpt.state.transr->relations);
    put_u64(out, ckpt.state.transr->projections.size());
    for (const Matrix& m : ckpt.state.transr->projections) put_matrix(out, m);
  }

  out.flush();
  if (!out) throw_error(ErrorCategory::Io, "write failed for " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  Reader r{std::ifstream(path, std::ios::binary), path.string()};
  if (!r.in) throw_error(ErrorCategory::Io, "cannot read " + path.string());

  char magic[8];
  r.bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw_error(ErrorCategory::Incompatible, path.string() + ": not a checkpoint file");

  Checkpoint ckpt;
  ckpt.concept_hash = r.u64();
  ckpt.relation_hash = r.u64();

  std::uint64_t n_config = r.u64();
  if (n_config > (1ull << 20)) r.fail("implausible config size");
  for (std::uint64_t i = 0; i < n_config; ++i) {
    std::string key = r.str();
    std::string value = r.str();
    ckpt.config.emplace(std::move(key), std::move(value));
  }

  ckpt.state.space.concepts = r.matrix();
  ckpt.state.space.relations = r.matrix();

  for (SemanticClass c : kAllClasses) {
    if (r.u64() == 0) continue;
    Matrix m = r.matrix();
    std::uint64_t n_cov = r.u64();
    if (n_cov != static_cast<std::uint64_t>(m.rows())) r.fail("coverage length mismatch");
    std::vector<std::uint8_t> cov(n_cov);
    r.bytes(reinterpret_cast<char*>(cov.data()), n_cov);
    ckpt.state.resources.set_class(c, std::move(m), std::move(cov));
  }

  if (r.u64() != 0) {
    TransRParams params;
    params.relations = r.matrix();
    std::uint64_t n_proj = r.u64();
    if (n_proj > (1ull << 20)) r.fail("implausible projection count");
    params.projections.reserve(n_proj);
    for (std::uint64_t i = 0; i < n_proj; ++i) params.projections.push_back(r.matrix());
    ckpt.state.transr = std::move(params);
  }
  return ckpt;
}

void check_compatible(const Checkpoint& ckpt, const KnowledgeGraph& graph) {
  if (ckpt.concept_hash != graph.concepts().content_hash() ||
      ckpt.relation_hash != graph.relations().content_hash())
    throw_error(ErrorCategory::Incompatible,
                "checkpoint vocabulary does not match the loaded graph");
}

}  // namespace cskge
