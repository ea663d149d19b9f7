#include "harmlab/ball_cache.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "harmlab/serialize.hpp"

namespace harmlab {

namespace fs = std::filesystem;
using namespace detail;

namespace {

constexpr char kMagic[4] = {'H', 'L', 'B', '1'};

void put_str(std::vector<uint8_t>& out, const std::string& s) {
  put_uvarint(out, s.size());
  out.insert(out.end(), s.begin(), s.end());
}

std::string get_str(const uint8_t*& p, const uint8_t* end) {
  const uint64_t n = get_uvarint(p, end);
  if (static_cast<uint64_t>(end - p) < n) throw std::runtime_error("truncated string");
  std::string s(reinterpret_cast<const char*>(p), n);
  p += n;
  return s;
}

void put_rational(std::vector<uint8_t>& out, const Rational& q) {
  put_mpz(out, mpq_numref(q.get_mpq_t()));
  put_mpz(out, mpq_denref(q.get_mpq_t()));
}

Rational get_rational(const uint8_t*& p, const uint8_t* end) {
  mpz_class num = get_mpz(p, end);
  mpz_class den = get_mpz(p, end);
  if (den <= 0) throw std::runtime_error("corrupt probability");
  Rational q(num);
  q /= Rational(den);
  return q;
}

}  // namespace

BallCache::BallCache(std::string dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) fs::create_directories(dir_);
}

BallCache BallCache::from_env() {
  const char* env = std::getenv("HARMLAB_CACHE_DIR");
  return env && *env ? BallCache(env) : BallCache();
}

std::string BallCache::path_for(const GroupElement& center, const StepDistribution& dist,
                                int radius) const {
  Fnv64 h;
  const std::string fam = center.family().str();
  h.write(fam.data(), fam.size());
  std::vector<uint8_t> buf;
  for (const auto& [g, p] : dist.steps) {
    buf.clear();
    serialize_element(g, buf);
    put_rational(buf, p);
    h.write(buf.data(), buf.size());
    h.write_u8('/');
  }
  buf.clear();
  serialize_element(center, buf);
  h.write(buf.data(), buf.size());
  h.write_i64(radius);

  char name[32];
  std::snprintf(name, sizeof(name), "%016llx.ball", static_cast<unsigned long long>(h.state));
  return (fs::path(dir_) / name).string();
}

void save_ball(const DirectedBall& ball, const std::string& path) {
  std::vector<uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  put_str(out, ball.center.family().str());
  put_ivarint(out, ball.radius);
  put_uvarint(out, ball.vertices.size());
  put_uvarint(out, ball.boundary.size());
  for (const auto& v : ball.vertices) serialize_element(v, out);
  for (const auto& x : ball.boundary) serialize_element(x, out);
  for (int32_t d : ball.dist) put_ivarint(out, d);
  for (int32_t v = 0; v < ball.interior_count(); ++v) {
    put_uvarint(out, ball.edges_int[v].size());
    for (const auto& [w, p] : ball.edges_int[v]) {
      put_uvarint(out, static_cast<uint64_t>(w));
      put_rational(out, p);
    }
    put_uvarint(out, ball.edges_bd[v].size());
    for (const auto& [x, p] : ball.edges_bd[v]) {
      put_uvarint(out, static_cast<uint64_t>(x));
      put_rational(out, p);
    }
  }
  Fnv64 h;
  h.write(out.data(), out.size());
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(h.state >> (8 * i)));

  // Atomic publish: write a temp file, then rename into place. The suffix
  // keeps concurrent writers of the same ball from clobbering each other.
  static std::atomic<uint64_t> counter{0};
  const std::string tmp = path + ".tmp" + std::to_string(counter.fetch_add(1));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f) {
      std::remove(tmp.c_str());
      throw std::runtime_error("cannot write ball cache file " + tmp);
    }
  }
  fs::rename(tmp, path);
}

std::optional<DirectedBall> load_ball(const std::string& path, const FamilySpec& expected_family) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  try {
    if (data.size() < 12 || std::memcmp(data.data(), kMagic, 4) != 0) throw std::runtime_error("magic");
    uint64_t stored = 0;
    for (int i = 0; i < 8; ++i) {
      stored |= static_cast<uint64_t>(data[data.size() - 8 + i]) << (8 * i);
    }
    Fnv64 h;
    h.write(data.data(), data.size() - 8);
    if (h.state != stored) throw std::runtime_error("checksum");

    const uint8_t* p = data.data() + 4;
    const uint8_t* end = data.data() + data.size() - 8;
    DirectedBall ball;
    const std::string fam_str = get_str(p, end);
    if (fam_str != expected_family.str()) throw std::runtime_error("family mismatch");
    ball.radius = static_cast<int>(get_ivarint(p, end));
    const uint64_t n = get_uvarint(p, end);
    const uint64_t m = get_uvarint(p, end);
    if (ball.radius < 0 || n == 0) throw std::runtime_error("counts");
    ball.vertices.reserve(n);
    for (uint64_t i = 0; i < n; ++i) {
      GroupElement v = deserialize_element(expected_family, p, end);
      ball.index_of.emplace(v, static_cast<int32_t>(i));
      ball.vertices.push_back(std::move(v));
    }
    ball.boundary.reserve(m);
    for (uint64_t i = 0; i < m; ++i) {
      GroupElement v = deserialize_element(expected_family, p, end);
      ball.boundary_index_of.emplace(v, static_cast<int32_t>(i));
      ball.boundary.push_back(std::move(v));
    }
    ball.center = ball.vertices[0];
    ball.dist.resize(n);
    for (auto& d : ball.dist) {
      d = static_cast<int32_t>(get_ivarint(p, end));
      if (d < 0 || d > ball.radius) throw std::runtime_error("distance");
    }
    ball.new_at_dist.assign(static_cast<size_t>(ball.radius) + 2, 0);
    for (int32_t d : ball.dist) ball.new_at_dist[d] += 1;
    ball.new_at_dist[ball.radius + 1] = static_cast<int64_t>(m);

    ball.edges_int.resize(n);
    ball.edges_bd.resize(n);
    ball.boundary_preds.resize(m);
    ball.geo_pred.assign(n, -1);
    ball.bd_geo_pred.assign(m, -1);
    for (uint64_t v = 0; v < n; ++v) {
      const uint64_t ki = get_uvarint(p, end);
      for (uint64_t e = 0; e < ki; ++e) {
        const uint64_t w = get_uvarint(p, end);
        if (w >= n) throw std::runtime_error("edge target");
        Rational q = get_rational(p, end);
        // Stored edge order is BFS discovery order, so the first edge
        // into a vertex re-derives its geodesic predecessor.
        if (w > v && ball.geo_pred[w] == -1) ball.geo_pred[w] = static_cast<int32_t>(v);
        ball.edges_int[v].emplace_back(static_cast<int32_t>(w), std::move(q));
      }
      const uint64_t kb = get_uvarint(p, end);
      for (uint64_t e = 0; e < kb; ++e) {
        const uint64_t x = get_uvarint(p, end);
        if (x >= m) throw std::runtime_error("edge target");
        Rational q = get_rational(p, end);
        if (ball.bd_geo_pred[x] == -1) ball.bd_geo_pred[x] = static_cast<int32_t>(v);
        ball.boundary_preds[x].push_back(static_cast<int32_t>(v));
        ball.edges_bd[v].emplace_back(static_cast<int32_t>(x), std::move(q));
      }
    }
    if (p != end) throw std::runtime_error("trailing bytes");
    for (int32_t x = 0; x < ball.boundary_count(); ++x) {
      if (ball.bd_geo_pred[x] == -1) throw std::runtime_error("orphan boundary vertex");
    }
    return ball;
  } catch (const std::exception&) {
    // Corrupt cache entries are discarded; the caller rebuilds.
    std::remove(path.c_str());
    return std::nullopt;
  }
}

DirectedBall BallCache::get_or_build(const GroupElement& center, const StepDistribution& dist,
                                     int radius, size_t vertex_cap) const {
  if (!enabled()) return build_ball(center, dist, radius, vertex_cap);
  const std::string path = path_for(center, dist, radius);
  if (auto cached = load_ball(path, center.family())) {
    if (cached->center == center && cached->radius == radius) return std::move(*cached);
    std::remove(path.c_str());
  }
  DirectedBall ball = build_ball(center, dist, radius, vertex_cap);
  save_ball(ball, path);
  return ball;
}

}  // namespace harmlab
