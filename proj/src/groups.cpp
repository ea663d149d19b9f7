#include "harmlab/groups.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "harmlab/grigorchuk.hpp"
#include "harmlab/serialize.hpp"

namespace harmlab {

using detail::get_ivarint;
using detail::get_mpz;
using detail::get_uvarint;
using detail::put_ivarint;
using detail::put_mpz;
using detail::put_uvarint;

namespace {

[[noreturn]] void bad_family(const std::string& what) { throw std::invalid_argument(what); }

void require_same_family(const GroupElement& g, const GroupElement& h) {
  if (!(g.family() == h.family())) bad_family("family mismatch between group elements");
}

Rational m_pow(int64_t m, int64_t k) { return rational_pow(Rational(m), static_cast<long>(k)); }

// Sorted symmetric difference of lhs and (rhs + shift).
std::vector<int64_t> lamp_merge(const std::vector<int64_t>& lhs, const std::vector<int64_t>& rhs,
                                int64_t shift) {
  std::vector<int64_t> out;
  out.reserve(lhs.size() + rhs.size());
  size_t i = 0, j = 0;
  while (i < lhs.size() || j < rhs.size()) {
    if (j == rhs.size() || (i < lhs.size() && lhs[i] < rhs[j] + shift)) {
      out.push_back(lhs[i++]);
    } else if (i == lhs.size() || rhs[j] + shift < lhs[i]) {
      out.push_back(rhs[j++] + shift);
    } else {
      ++i;
      ++j;  // equal entries cancel mod 2
    }
  }
  return out;
}

}  // namespace

std::string FamilySpec::str() const {
  switch (family) {
    case Family::Zd: return "z:" + std::to_string(d);
    case Family::Free: return "free:" + std::to_string(d);
    case Family::Heisenberg: return "heis";
    case Family::Lamplighter: return "lamplighter";
    case Family::BaumslagSolitar: return "bs:1:" + std::to_string(m);
    case Family::Grigorchuk: return "grigorchuk";
  }
  return "?";
}

FamilySpec parse_family(const std::string& spec) {
  FamilySpec fs;
  if (spec == "heis") {
    fs.family = Family::Heisenberg;
    return fs;
  }
  if (spec == "lamplighter") {
    fs.family = Family::Lamplighter;
    return fs;
  }
  if (spec == "grigorchuk") {
    fs.family = Family::Grigorchuk;
    return fs;
  }
  auto parse_int = [&](const std::string& s) -> long {
    size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(s, &pos);
    } catch (...) {
      bad_family("bad group spec: " + spec);
    }
    if (pos != s.size()) bad_family("bad group spec: " + spec);
    return v;
  };
  if (spec.rfind("z:", 0) == 0) {
    fs.family = Family::Zd;
    fs.d = static_cast<int32_t>(parse_int(spec.substr(2)));
    if (fs.d < 1) bad_family("z:d requires d >= 1, got " + spec);
    return fs;
  }
  if (spec.rfind("free:", 0) == 0) {
    fs.family = Family::Free;
    fs.d = static_cast<int32_t>(parse_int(spec.substr(5)));
    if (fs.d < 1) bad_family("free:k requires k >= 1, got " + spec);
    return fs;
  }
  if (spec.rfind("bs:", 0) == 0) {
    const size_t mid = spec.find(':', 3);
    if (mid == std::string::npos) bad_family("bad group spec: " + spec);
    if (parse_int(spec.substr(3, mid - 3)) != 1) bad_family("only BS(1,m) is supported: " + spec);
    fs.family = Family::BaumslagSolitar;
    fs.m = parse_int(spec.substr(mid + 1));
    if (fs.m < 2) bad_family("bs:1:m requires m >= 2, got " + spec);
    return fs;
  }
  bad_family("unknown group spec: " + spec);
}

const GroupElement& GroupContext::generator(const std::string& name) const {
  for (const auto& [n, g] : generators) {
    if (n == name) return g;
  }
  throw std::invalid_argument("no generator named '" + name + "' in " + fam.str());
}

GroupContext make_group(const FamilySpec& spec) {
  GroupContext ctx;
  ctx.fam = spec;
  switch (spec.family) {
    case Family::Zd: {
      if (spec.d < 1) bad_family("z:d requires d >= 1");
      ctx.identity = GroupElement(spec, ZdPayload{std::vector<int64_t>(spec.d, 0)});
      for (int32_t i = 0; i < spec.d; ++i) {
        std::vector<int64_t> plus(spec.d, 0), minus(spec.d, 0);
        plus[i] = 1;
        minus[i] = -1;
        ctx.generators.emplace_back("x" + std::to_string(i + 1), GroupElement(spec, ZdPayload{plus}));
        ctx.generators.emplace_back("X" + std::to_string(i + 1), GroupElement(spec, ZdPayload{minus}));
      }
      break;
    }
    case Family::Free: {
      if (spec.d < 1) bad_family("free:k requires k >= 1");
      ctx.identity = GroupElement(spec, FreeWordPayload{});
      for (int32_t i = 0; i < spec.d; ++i) {
        std::string lo, hi;
        if (i < 26) {
          lo = std::string(1, static_cast<char>('a' + i));
          hi = std::string(1, static_cast<char>('A' + i));
        } else {
          lo = "g" + std::to_string(i);
          hi = "G" + std::to_string(i);
        }
        ctx.generators.emplace_back(
            lo, GroupElement(spec, FreeWordPayload{{static_cast<uint16_t>(2 * i)}}));
        ctx.generators.emplace_back(
            hi, GroupElement(spec, FreeWordPayload{{static_cast<uint16_t>(2 * i + 1)}}));
      }
      break;
    }
    case Family::Heisenberg: {
      ctx.identity = GroupElement(spec, HeisPayload{});
      ctx.generators.emplace_back("x", GroupElement(spec, HeisPayload{1, 0, 0}));
      ctx.generators.emplace_back("X", GroupElement(spec, HeisPayload{-1, 0, 0}));
      ctx.generators.emplace_back("y", GroupElement(spec, HeisPayload{0, 1, 0}));
      ctx.generators.emplace_back("Y", GroupElement(spec, HeisPayload{0, -1, 0}));
      break;
    }
    case Family::Lamplighter: {
      ctx.identity = GroupElement(spec, LampPayload{});
      ctx.generators.emplace_back("t", GroupElement(spec, LampPayload{{}, 1}));
      ctx.generators.emplace_back("T", GroupElement(spec, LampPayload{{}, -1}));
      ctx.generators.emplace_back("s", GroupElement(spec, LampPayload{{0}, 0}));
      break;
    }
    case Family::BaumslagSolitar: {
      if (spec.m < 2) bad_family("bs:1:m requires m >= 2");
      ctx.identity = GroupElement(spec, BsPayload{});
      ctx.generators.emplace_back("s", GroupElement(spec, BsPayload{0, Rational(1)}));
      ctx.generators.emplace_back("S", GroupElement(spec, BsPayload{0, Rational(-1)}));
      ctx.generators.emplace_back("t", GroupElement(spec, BsPayload{1, Rational(0)}));
      ctx.generators.emplace_back("T", GroupElement(spec, BsPayload{-1, Rational(0)}));
      break;
    }
    case Family::Grigorchuk: {
      ctx.identity = GroupElement(spec, GrigPayload{{}, "e"});
      for (uint8_t c = 0; c <= 3; ++c) {
        grig::Word w{c};
        ctx.generators.emplace_back(std::string(1, "abcd"[c]),
                                    GroupElement(spec, GrigPayload{w, grig::canonical_key(w)}));
      }
      break;
    }
  }
  return ctx;
}

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  require_same_family(g, h);
  const FamilySpec& fam = g.family();
  switch (fam.family) {
    case Family::Zd: {
      const auto& a = std::get<ZdPayload>(g.payload());
      const auto& b = std::get<ZdPayload>(h.payload());
      ZdPayload out = a;
      for (size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
      return GroupElement(fam, std::move(out));
    }
    case Family::Free: {
      const auto& a = std::get<FreeWordPayload>(g.payload());
      const auto& b = std::get<FreeWordPayload>(h.payload());
      FreeWordPayload out = a;
      for (uint16_t c : b.letters) {
        if (!out.letters.empty() && (out.letters.back() ^ 1u) == c) {
          out.letters.pop_back();
        } else {
          out.letters.push_back(c);
        }
      }
      return GroupElement(fam, std::move(out));
    }
    case Family::Heisenberg: {
      const auto& a = std::get<HeisPayload>(g.payload());
      const auto& b = std::get<HeisPayload>(h.payload());
      return GroupElement(fam, HeisPayload{a.x + b.x, a.y + b.y, a.z + b.z + a.x * b.y});
    }
    case Family::Lamplighter: {
      const auto& a = std::get<LampPayload>(g.payload());
      const auto& b = std::get<LampPayload>(h.payload());
      return GroupElement(fam, LampPayload{lamp_merge(a.lamps, b.lamps, a.pos), a.pos + b.pos});
    }
    case Family::BaumslagSolitar: {
      const auto& a = std::get<BsPayload>(g.payload());
      const auto& b = std::get<BsPayload>(h.payload());
      BsPayload out;
      out.exp = a.exp + b.exp;
      out.shift = a.shift + m_pow(fam.m, a.exp) * b.shift;
      return GroupElement(fam, std::move(out));
    }
    case Family::Grigorchuk: {
      const auto& a = std::get<GrigPayload>(g.payload());
      const auto& b = std::get<GrigPayload>(h.payload());
      grig::Word w = grig::concat_reduce(a.word, b.word);
      std::string canon = grig::canonical_key(w);
      return GroupElement(fam, GrigPayload{std::move(w), std::move(canon)});
    }
  }
  bad_family("corrupt family tag");
}

GroupElement invert(const GroupElement& g) {
  const FamilySpec& fam = g.family();
  switch (fam.family) {
    case Family::Zd: {
      ZdPayload out = std::get<ZdPayload>(g.payload());
      for (auto& c : out.coords) c = -c;
      return GroupElement(fam, std::move(out));
    }
    case Family::Free: {
      const auto& a = std::get<FreeWordPayload>(g.payload());
      FreeWordPayload out;
      out.letters.reserve(a.letters.size());
      for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it) {
        out.letters.push_back(*it ^ 1u);
      }
      return GroupElement(fam, std::move(out));
    }
    case Family::Heisenberg: {
      const auto& a = std::get<HeisPayload>(g.payload());
      return GroupElement(fam, HeisPayload{-a.x, -a.y, -a.z + a.x * a.y});
    }
    case Family::Lamplighter: {
      const auto& a = std::get<LampPayload>(g.payload());
      LampPayload out;
      out.pos = -a.pos;
      out.lamps = a.lamps;
      for (auto& l : out.lamps) l -= a.pos;
      return GroupElement(fam, std::move(out));
    }
    case Family::BaumslagSolitar: {
      const auto& a = std::get<BsPayload>(g.payload());
      BsPayload out;
      out.exp = -a.exp;
      out.shift = -(m_pow(fam.m, -a.exp) * a.shift);
      return GroupElement(fam, std::move(out));
    }
    case Family::Grigorchuk: {
      const auto& a = std::get<GrigPayload>(g.payload());
      grig::Word w(a.word.rbegin(), a.word.rend());  // all letters are involutions
      std::string canon = grig::canonical_key(w);
      return GroupElement(fam, GrigPayload{std::move(w), std::move(canon)});
    }
  }
  bad_family("corrupt family tag");
}

bool is_identity(const GroupElement& g) {
  switch (g.family().family) {
    case Family::Zd: {
      const auto& a = std::get<ZdPayload>(g.payload());
      return std::all_of(a.coords.begin(), a.coords.end(), [](int64_t c) { return c == 0; });
    }
    case Family::Free: return std::get<FreeWordPayload>(g.payload()).letters.empty();
    case Family::Heisenberg: {
      const auto& a = std::get<HeisPayload>(g.payload());
      return a.x == 0 && a.y == 0 && a.z == 0;
    }
    case Family::Lamplighter: {
      const auto& a = std::get<LampPayload>(g.payload());
      return a.lamps.empty() && a.pos == 0;
    }
    case Family::BaumslagSolitar: {
      const auto& a = std::get<BsPayload>(g.payload());
      return a.exp == 0 && a.shift == 0;
    }
    case Family::Grigorchuk: return std::get<GrigPayload>(g.payload()).canon == "e";
  }
  return false;
}

std::vector<GroupElement> translate_path(const GroupElement& g,
                                         const std::vector<GroupElement>& path) {
  const GroupElement gi = invert(g);
  std::vector<GroupElement> out;
  out.reserve(path.size());
  for (const auto& v : path) {
    require_same_family(g, v);
    out.push_back(multiply(gi, v));
  }
  return out;
}

size_t GroupElementHash::operator()(const GroupElement& g) const {
  Fnv64 h;
  h.write_u8(static_cast<uint8_t>(g.family().family));
  h.write_i64(g.family().d);
  h.write_i64(g.family().m);
  switch (g.family().family) {
    case Family::Zd:
      for (int64_t c : std::get<ZdPayload>(g.payload()).coords) h.write_i64(c);
      break;
    case Family::Free:
      for (uint16_t c : std::get<FreeWordPayload>(g.payload()).letters) h.write_u64(c);
      break;
    case Family::Heisenberg: {
      const auto& a = std::get<HeisPayload>(g.payload());
      h.write_i64(a.x);
      h.write_i64(a.y);
      h.write_i64(a.z);
      break;
    }
    case Family::Lamplighter: {
      const auto& a = std::get<LampPayload>(g.payload());
      for (int64_t l : a.lamps) h.write_i64(l);
      h.write_u8(0xff);
      h.write_i64(a.pos);
      break;
    }
    case Family::BaumslagSolitar: {
      const auto& a = std::get<BsPayload>(g.payload());
      h.write_i64(a.exp);
      hash_rational(h, a.shift);
      break;
    }
    case Family::Grigorchuk: {
      const auto& canon = std::get<GrigPayload>(g.payload()).canon;
      h.write(canon.data(), canon.size());
      break;
    }
  }
  return static_cast<size_t>(h.state);
}

std::string format_element(const GroupElement& g) {
  std::ostringstream os;
  switch (g.family().family) {
    case Family::Zd: {
      const auto& a = std::get<ZdPayload>(g.payload());
      os << '(';
      for (size_t i = 0; i < a.coords.size(); ++i) os << (i ? "," : "") << a.coords[i];
      os << ')';
      break;
    }
    case Family::Free: {
      const auto& a = std::get<FreeWordPayload>(g.payload());
      if (a.letters.empty()) return "e";
      const bool small = g.family().d <= 26;
      for (size_t i = 0; i < a.letters.size(); ++i) {
        const int gen = a.letters[i] / 2;
        const bool inv = a.letters[i] & 1;
        if (small) {
          os << static_cast<char>((inv ? 'A' : 'a') + gen);
        } else {
          os << (i ? "." : "") << (inv ? 'G' : 'g') << gen;
        }
      }
      break;
    }
    case Family::Heisenberg: {
      const auto& a = std::get<HeisPayload>(g.payload());
      os << '(' << a.x << ',' << a.y << ',' << a.z << ')';
      break;
    }
    case Family::Lamplighter: {
      const auto& a = std::get<LampPayload>(g.payload());
      os << '{';
      for (size_t i = 0; i < a.lamps.size(); ++i) os << (i ? "," : "") << a.lamps[i];
      os << "}@" << a.pos;
      break;
    }
    case Family::BaumslagSolitar: {
      const auto& a = std::get<BsPayload>(g.payload());
      os << '(' << a.exp << '|' << rational_str(a.shift) << ')';
      break;
    }
    case Family::Grigorchuk:
      return grig::word_str(std::get<GrigPayload>(g.payload()).word);
  }
  return os.str();
}

GroupElement parse_element(const GroupContext& ctx, const std::string& word) {
  if (word.empty() || word == "e" || word == "id") return ctx.identity;
  GroupElement acc = ctx.identity;
  size_t pos = 0;
  while (pos < word.size()) {
    const char c = word[pos];
    if (c == '.' || c == '*' || c == ' ' || c == '\t') {
      ++pos;
      continue;
    }
    size_t best_len = 0;
    const GroupElement* best = nullptr;
    for (const auto& [name, gen] : ctx.generators) {
      if (name.size() > best_len && word.compare(pos, name.size(), name) == 0) {
        best_len = name.size();
        best = &gen;
      }
    }
    if (!best) {
      throw std::invalid_argument("cannot parse element '" + word + "' at position " +
                                  std::to_string(pos) + " for " + ctx.fam.str());
    }
    acc = multiply(acc, *best);
    pos += best_len;
  }
  return acc;
}

void serialize_element(const GroupElement& g, std::vector<uint8_t>& out) {
  switch (g.family().family) {
    case Family::Zd: {
      const auto& a = std::get<ZdPayload>(g.payload());
      for (int64_t c : a.coords) put_ivarint(out, c);
      break;
    }
    case Family::Free: {
      const auto& a = std::get<FreeWordPayload>(g.payload());
      put_uvarint(out, a.letters.size());
      for (uint16_t c : a.letters) put_uvarint(out, c);
      break;
    }
    case Family::Heisenberg: {
      const auto& a = std::get<HeisPayload>(g.payload());
      put_ivarint(out, a.x);
      put_ivarint(out, a.y);
      put_ivarint(out, a.z);
      break;
    }
    case Family::Lamplighter: {
      const auto& a = std::get<LampPayload>(g.payload());
      put_uvarint(out, a.lamps.size());
      for (int64_t l : a.lamps) put_ivarint(out, l);
      put_ivarint(out, a.pos);
      break;
    }
    case Family::BaumslagSolitar: {
      const auto& a = std::get<BsPayload>(g.payload());
      put_ivarint(out, a.exp);
      put_mpz(out, mpq_numref(a.shift.get_mpq_t()));
      put_mpz(out, mpq_denref(a.shift.get_mpq_t()));
      break;
    }
    case Family::Grigorchuk: {
      const auto& a = std::get<GrigPayload>(g.payload());
      put_uvarint(out, a.word.size());
      out.insert(out.end(), a.word.begin(), a.word.end());
      break;
    }
  }
}

GroupElement deserialize_element(const FamilySpec& fam, const uint8_t*& p, const uint8_t* end) {
  switch (fam.family) {
    case Family::Zd: {
      ZdPayload a;
      a.coords.resize(fam.d);
      for (auto& c : a.coords) c = get_ivarint(p, end);
      return GroupElement(fam, std::move(a));
    }
    case Family::Free: {
      FreeWordPayload a;
      const uint64_t n = get_uvarint(p, end);
      a.letters.reserve(n);
      for (uint64_t i = 0; i < n; ++i) a.letters.push_back(static_cast<uint16_t>(get_uvarint(p, end)));
      return GroupElement(fam, std::move(a));
    }
    case Family::Heisenberg: {
      HeisPayload a;
      a.x = get_ivarint(p, end);
      a.y = get_ivarint(p, end);
      a.z = get_ivarint(p, end);
      return GroupElement(fam, a);
    }
    case Family::Lamplighter: {
      LampPayload a;
      const uint64_t n = get_uvarint(p, end);
      a.lamps.reserve(n);
      for (uint64_t i = 0; i < n; ++i) a.lamps.push_back(get_ivarint(p, end));
      a.pos = get_ivarint(p, end);
      return GroupElement(fam, std::move(a));
    }
    case Family::BaumslagSolitar: {
      BsPayload a;
      a.exp = get_ivarint(p, end);
      mpz_class num = get_mpz(p, end);
      mpz_class den = get_mpz(p, end);
      if (den == 0) throw std::runtime_error("corrupt rational");
      a.shift = Rational(num) / Rational(den);
      return GroupElement(fam, std::move(a));
    }
    case Family::Grigorchuk: {
      const uint64_t n = get_uvarint(p, end);
      if (static_cast<uint64_t>(end - p) < n) throw std::runtime_error("truncated word");
      grig::Word w(p, p + n);
      p += n;
      w = grig::reduce(std::move(w));
      std::string canon = grig::canonical_key(w);
      return GroupElement(fam, GrigPayload{std::move(w), std::move(canon)});
    }
  }
  throw std::runtime_error("corrupt family tag");
}

}  // namespace harmlab
