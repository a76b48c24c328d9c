#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cluster.hpp"
#include "sessc/engine.hpp"

namespace sessc {

namespace {

// Encoding tree. Names bound by a cut nest stay as Ref until the nest has
// decided on labels; names bound by prefixes are labelled on the way down.
struct Enc {
  enum Kind { Text, Ref, Link, Bag, Seq } kind;
  std::string text;
  std::uint64_t uid = 0;
  std::vector<Enc> kids;
};

Enc text(std::string s) { return Enc{Enc::Text, std::move(s), 0, {}}; }
Enc seq(std::vector<Enc> kids) { return Enc{Enc::Seq, {}, 0, std::move(kids)}; }
template <class... A>
Enc seq(Enc first, A &&...rest) {
  Enc e{Enc::Seq, {}, 0, {}};
  e.kids.reserve(1 + sizeof...(rest));
  e.kids.push_back(std::move(first));
  (e.kids.push_back(std::forward<A>(rest)), ...);
  return e;
}

using Labels = std::map<std::uint64_t, std::string>;

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)); }


template <class Ref>
void render(const Enc &e, const Ref &ref, std::string &out) {
  switch (e.kind) {
    case Enc::Text: out += e.text; return;
    case Enc::Ref: ref(e.uid, out); return;
    case Enc::Link: {
      std::string a, b;
      render(e.kids[0], ref, a);
      render(e.kids[1], ref, b);
      if (b < a) std::swap(a, b);
      out += "<" + a + "," + b + ">";
      return;
    }
    case Enc::Bag: {
      std::vector<std::string> parts;
      for (const auto &k : e.kids) {
        std::string s;
        render(k, ref, s);
        parts.push_back(std::move(s));
      }
      std::sort(parts.begin(), parts.end());
      out += "{";
      for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "|" : "") + parts[i];
      out += "}";
      return;
    }
    case Enc::Seq:
      for (const auto &k : e.kids) render(k, ref, out);
      return;
  }
}

template <class Ref>
std::string render(const Enc &e, const Ref &ref) {
  std::string s;
  render(e, ref, s);
  return s;
}

template <class Ref>
std::size_t digest(const Enc &e, const Ref &ref) {
  switch (e.kind) {
    case Enc::Text: return std::hash<std::string>{}(e.text);
    case Enc::Ref: return ref(e.uid);
    case Enc::Link: {
      std::size_t a = digest(e.kids[0], ref), b = digest(e.kids[1], ref);
      if (b < a) std::swap(a, b);
      return mix(mix(11, a), b);
    }
    case Enc::Bag: {
      std::vector<std::size_t> hs;
      for (const auto &k : e.kids) hs.push_back(digest(k, ref));
      std::sort(hs.begin(), hs.end());
      std::size_t h = 13;
      for (auto x : hs) h = mix(h, x);
      return h;
    }
    case Enc::Seq: {
      std::size_t h = 17;
      for (const auto &k : e.kids) h = mix(h, digest(k, ref));
      return h;
    }
  }
  return 0;
}

void substitute(Enc &e, const Labels &labels) {
  if (e.kind == Enc::Ref) {
    auto it = labels.find(e.uid);
    if (it != labels.end()) e = text(it->second);
    return;
  }
  for (auto &k : e.kids) substitute(k, labels);
}

void ref_order(const Enc &e, std::vector<std::uint64_t> &out) {
  if (e.kind == Enc::Ref) out.push_back(e.uid);
  for (const auto &k : e.kids) ref_order(k, out);
}

class Encoder {
 public:
  Enc encode(const ProcPtr &p, int depth, const std::map<Name, std::string> &env,
             const std::set<std::uint64_t> &outer) {
    auto nm = [&](const Name &n) {
      auto it = env.find(n);
      if (it != env.end()) return text(it->second);
      return Enc{Enc::Ref, {}, n.uid, {}};
    };
    auto bind = [&](const Name &n) {
      auto e = env;
      e[n] = "b" + std::to_string(depth);
      return e;
    };
    switch (p->kind) {
      case ProcKind::Link: return Enc{Enc::Link, {}, 0, {nm(p->chan), nm(p->fresh)}};
      case ProcKind::Cut: return nest(p, depth, env, outer);
      case ProcKind::Out:
        return seq(text("out("), nm(p->chan), text(";"), encode(p->p, depth + 1, bind(p->fresh), outer), text(";"),
                    encode(p->q, depth + 1, env, outer), text(")"));
      case ProcKind::In:
        return seq(text("in("), nm(p->chan), text(";"), encode(p->p, depth + 1, bind(p->fresh), outer), text(")"));
      case ProcKind::Inject:
        return seq(text("inj("), nm(p->chan), text(";" + p->label.text + ";"), encode(p->p, depth, env, outer),
                    text(")"));
      case ProcKind::Case: {
        std::vector<std::pair<std::string, const ProcPtr *>> bs;
        for (const auto &[l, q] : p->branches) bs.emplace_back(l.text, &q);
        std::sort(bs.begin(), bs.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        std::vector<Enc> kids{text("case("), nm(p->chan)};
        for (const auto &[l, q] : bs) {
          kids.push_back(text(";" + l + ":"));
          kids.push_back(encode(*q, depth, env, outer));
        }
        kids.push_back(text(")"));
        return seq(std::move(kids));
      }
      case ProcKind::Bang:
        return seq(text("bang("), nm(p->chan), text(";"), encode(p->p, depth + 1, bind(p->fresh), outer), text(")"));
      case ProcKind::Query:
        return seq(text("query("), nm(p->chan), text(";"), encode(p->p, depth + 1, bind(p->fresh), outer), text(")"));
      case ProcKind::OutType:
        return seq(text("outT("), nm(p->chan), text(";" + prop_key(p->prop) + ";"), encode(p->p, depth, env, outer),
                    text(")"));
      case ProcKind::InType:
        return seq(text("inT("), nm(p->chan), text(";" + p->tyvar.ident + ";"), encode(p->p, depth, env, outer),
                    text(")"));
      case ProcKind::EmptyOut: return seq(text("one("), nm(p->chan), text(")"));
      case ProcKind::EmptyIn:
        return seq(text("bot("), nm(p->chan), text(";"), encode(p->p, depth, env, outer), text(")"));
    }
    return text("?");
  }

 private:
  Enc nest(const ProcPtr &p, int depth, const std::map<Name, std::string> &env, const std::set<std::uint64_t> &outer) {
    detail::Cluster c = detail::flatten(p);
    std::set<std::uint64_t> mine, inner_outer = outer;
    for (const auto &[n, t] : c.type) {
      mine.insert(n.uid);
      inner_outer.insert(n.uid);
    }
    std::size_t n = c.leaves.size();
    std::vector<Enc> leaves;
    for (const auto &l : c.leaves) leaves.push_back(encode(l.p, depth + 1, env, inner_outer));

    // Leaf shapes with every bound name hidden, plus where our names occur.
    auto hidden = [&](std::uint64_t u) -> std::size_t {
      if (mine.count(u) || outer.count(u)) return 1;
      return mix(2, u);
    };
    std::vector<std::size_t> shape_h(n);
    std::vector<std::vector<std::uint64_t>> refs(n);
    for (std::size_t i = 0; i < n; ++i) {
      shape_h[i] = digest(leaves[i], hidden);
      std::vector<std::uint64_t> r;
      ref_order(leaves[i], r);
      for (auto u : r)
        if (mine.count(u)) refs[i].push_back(u);
    }

    // Colour refinement: a name's colour summarises the leaves it occurs in,
    // its positions there and the colours of its neighbours.
    std::map<std::uint64_t, std::size_t> colour;
    for (auto u : mine) colour[u] = 0;
    std::size_t classes = 1;
    for (std::size_t round = 0; round < 6 && classes < mine.size(); ++round) {
      std::map<std::uint64_t, std::vector<std::size_t>> sig;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t around = shape_h[i];
        for (auto u : refs[i]) around = mix(around, colour[u]);
        for (std::size_t k = 0; k < refs[i].size(); ++k) sig[refs[i][k]].push_back(mix(around, k));
      }
      std::map<std::uint64_t, std::size_t> next;
      std::set<std::size_t> distinct;
      for (auto u : mine) {
        auto &v = sig[u];
        std::sort(v.begin(), v.end());
        std::size_t h = mix(0, colour[u]);
        for (auto x : v) h = mix(h, x);
        next[u] = h;
        distinct.insert(h);
      }
      colour = std::move(next);
      if (distinct.size() == classes) break;
      classes = distinct.size();
    }

    // Leaves ordered by shape and colours; names by colour, then first use.
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> order;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> k{shape_h[i]};
      for (auto u : refs[i]) k.push_back(colour[u]);
      order.emplace_back(std::move(k), i);
    }
    std::sort(order.begin(), order.end());
    std::map<std::uint64_t, std::size_t> first;
    std::size_t pos = 0;
    for (const auto &[k, i] : order)
      for (auto u : refs[i])
        if (!first.count(u)) first[u] = pos++;
    std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t>> names;
    for (auto u : mine) names.emplace_back(colour[u], first.count(u) ? first[u] : pos, u);
    std::sort(names.begin(), names.end());
    Labels labels;
    for (std::size_t k = 0; k < names.size(); ++k)
      labels[std::get<2>(names[k])] = "c" + std::to_string(depth) + "." + std::to_string(k);
    Enc bag{Enc::Bag, {}, 0, {}};
    for (auto &l : leaves) {
      substitute(l, labels);
      bag.kids.push_back(std::move(l));
    }
    return seq(text("nu" + std::to_string(names.size())), std::move(bag));
  }
};

void free_ref(std::uint64_t u, std::string &out) { out += "f" + std::to_string(u); }

ProcPtr regroup(const ProcPtr &p);

ProcPtr regroup_children(const ProcPtr &p) {
  auto n = std::make_shared<Process>(*p);
  if (n->p) n->p = regroup(n->p);
  if (n->q) n->q = regroup(n->q);
  for (auto &[l, b] : n->branches) b = regroup(b);
  if (n->kind == ProcKind::Link && n->fresh < n->chan) std::swap(n->chan, n->fresh);
  return n;
}

ProcPtr regroup(const ProcPtr &p) {
  if (p->kind != ProcKind::Cut) return regroup_children(p);
  detail::Cluster c = detail::flatten(p);
  for (auto &l : c.leaves) l.p = regroup_children(l.p);
  std::vector<std::pair<std::string, int>> keyed;
  for (int i = 0; i < static_cast<int>(c.leaves.size()); ++i) keyed.emplace_back(canonical_key(c.leaves[i].p), i);
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> order;
  for (const auto &[k, i] : keyed) order.push_back(i);
  return detail::rebuild(c, order);
}

}  // namespace

std::string canonical_key(const ProcPtr &p) {
  Encoder enc;
  return render(enc.encode(p, 0, {}, {}), free_ref);
}

std::uint64_t canonical_hash(const ProcPtr &p) {
  Encoder enc;
  return digest(enc.encode(p, 0, {}, {}), [](std::uint64_t u) { return mix(2, u); });
}

CanonicalProcess canonicalize(const ProcPtr &p) { return CanonicalProcess{regroup(p), canonical_key(p)}; }

bool equiv(const ProcPtr &p, const ProcPtr &q) { return canonical_key(p) == canonical_key(q); }

}  // namespace sessc
