#include "vprsim/synth.hpp"

#include "vprsim/rng.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>

namespace vprsim::synth {

namespace {

void validate(const SynthConfig& c) {
  if (c.n_places < 2) throw std::invalid_argument("SynthConfig: n_places must be >= 2");
  if (!(c.spacing_m > 0.0)) throw std::invalid_argument("SynthConfig: spacing_m must be > 0");
  if (c.dim < 1) throw std::invalid_argument("SynthConfig: dim must be >= 1");
  if (c.query_noise_sigma < 0.0 || c.aliasing_sigma < 0.0)
    throw std::invalid_argument("SynthConfig: sigmas must be >= 0");
  if (c.aliasing_pairs < 0 || c.aliasing_pairs > c.n_places / 2)
    throw std::invalid_argument("SynthConfig: aliasing_pairs must be in [0, n_places/2]");
}

Vector draw_normals(rng::Stream& stream, Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = stream.normal();
  return v;
}

Vector unit_normalized(Vector v) {
  const Real norm = v.norm();
  if (norm < 1e-12) throw std::runtime_error("generate: degenerate descriptor draw");
  return v / norm;
}

}  // namespace

SynthDataset generate(const SynthConfig& config) {
  validate(config);
  const Index n = config.n_places;
  const Index d = config.dim;

  Matrix reference(d, n);
  for (Index i = 0; i < n; ++i) {
    rng::Stream stream(config.seed, static_cast<std::uint32_t>(i), 0, rng::Purpose::SynthReference);
    reference.col(i) = unit_normalized(draw_normals(stream, d));
  }

  // Aliased pairs: distinct places, the second member rewritten as a small
  // perturbation of the first.
  std::vector<std::pair<Index, Index>> pairs;
  if (config.aliasing_pairs > 0) {
    rng::Stream pair_stream(config.seed, 0, 0, rng::Purpose::SynthAliasPairs);
    const auto order = pair_stream.permutation(n);
    for (Index k = 0; k < config.aliasing_pairs; ++k) {
      const Index kept = order[static_cast<std::size_t>(2 * k)];
      const Index dup = order[static_cast<std::size_t>(2 * k + 1)];
      rng::Stream noise(config.seed, static_cast<std::uint32_t>(dup), 0, rng::Purpose::SynthAliasNoise);
      reference.col(dup) =
          unit_normalized(reference.col(kept) + config.aliasing_sigma * draw_normals(noise, d));
      pairs.emplace_back(kept, dup);
    }
  }

  Matrix query(d, n);
  for (Index i = 0; i < n; ++i) {
    rng::Stream noise(config.seed, static_cast<std::uint32_t>(i), 0, rng::Purpose::SynthQueryNoise);
    query.col(i) = reference.col(i) + config.query_noise_sigma * draw_normals(noise, d);
  }

  Vector positions(n);
  for (Index i = 0; i < n; ++i) positions[i] = static_cast<Real>(i) * config.spacing_m;

  return SynthDataset{Traverse("synthetic_reference", std::move(reference), positions),
                      Traverse("synthetic_query", std::move(query), positions),
                      std::move(pairs)};
}

namespace {

void append_real(std::string& out, Real value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, res.ptr);
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line, const std::string& what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

Real parse_real(const std::filesystem::path& path, std::size_t line_no,
                const char* begin, const char* end, const char** next) {
  Real value = 0.0;
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{}) fail(path, line_no, "malformed real value");
  *next = res.ptr;
  return value;
}

}  // namespace

void save_traverse(const Traverse& traverse, const std::filesystem::path& path) {
  std::string out;
  out.reserve(static_cast<std::size_t>(traverse.frame_count()) *
              (static_cast<std::size_t>(traverse.dim()) * 20 + 24));
  out += "id " + traverse.id() + "\n";
  out += "dim " + std::to_string(traverse.dim()) + "\n";
  out += "count " + std::to_string(traverse.frame_count()) + "\n";
  for (Index i = 0; i < traverse.frame_count(); ++i) {
    append_real(out, traverse.position_m(i));
    for (Index k = 0; k < traverse.dim(); ++k) {
      out += ',';
      append_real(out, traverse.descriptors()(k, i));
    }
    out += '\n';
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("save_traverse: cannot open " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw std::runtime_error("save_traverse: write failed for " + path.string());
}

Traverse load_traverse(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("load_traverse: cannot open " + path.string());

  std::size_t line_no = 0;
  std::string line;
  auto next_line = [&]() {
    if (!std::getline(file, line)) fail(path, line_no + 1, "unexpected end of file");
    ++line_no;
  };

  next_line();
  if (line.rfind("id ", 0) != 0) fail(path, line_no, "expected 'id <label>' header");
  const std::string id = line.substr(3);
  if (id.empty()) fail(path, line_no, "empty dataset id");

  next_line();
  if (line.rfind("dim ", 0) != 0) fail(path, line_no, "expected 'dim <D>' header");
  const long dim = std::strtol(line.c_str() + 4, nullptr, 10);
  if (dim < 1) fail(path, line_no, "descriptor dimension must be >= 1");

  next_line();
  if (line.rfind("count ", 0) != 0) fail(path, line_no, "expected 'count <N>' header");
  const long count = std::strtol(line.c_str() + 6, nullptr, 10);
  if (count < 1) fail(path, line_no, "frame count must be >= 1");

  Matrix descriptors(dim, count);
  Vector positions(count);
  for (long i = 0; i < count; ++i) {
    next_line();
    const char* cursor = line.data();
    const char* end = line.data() + line.size();
    positions[i] = parse_real(path, line_no, cursor, end, &cursor);
    for (long k = 0; k < dim; ++k) {
      if (cursor == end || *cursor != ',')
        fail(path, line_no, "expected " + std::to_string(dim) + " descriptor values");
      ++cursor;
      descriptors(k, i) = parse_real(path, line_no, cursor, end, &cursor);
    }
    if (cursor != end) fail(path, line_no, "trailing data after " + std::to_string(dim) + " values");
  }
  if (std::getline(file, line) && !line.empty())
    fail(path, line_no + 1, "trailing data after " + std::to_string(count) + " records");

  try {
    return Traverse(id, std::move(descriptors), std::move(positions));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace vprsim::synth
