#include "slicemon/preimage_monitor.hpp"

#include "slicemon/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace slicemon {

namespace {

std::uint64_t range_mask(unsigned lo, unsigned hi) {
  // Bits lo..hi inclusive; empty when lo > hi.
  if (lo > hi)
    return 0;
  std::uint64_t upper = hi >= 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (hi + 1)) - 1);
  std::uint64_t lower = (std::uint64_t{1} << lo) - 1;
  return upper & ~lower;
}

void check_k(unsigned k) {
  if (k == 0 || k > max_monitor_k)
    throw ArgumentError("k must be in 1.." + std::to_string(max_monitor_k));
}

} // namespace

SliceConsistencyDfa::SliceConsistencyDfa(const LabelAlphabet& alphabet, unsigned k) : alphabet_(alphabet), k_(k) {
  check_k(k);
  std::vector<Symbol> threads, locs;
  for (const auto& e : alphabet_.labels()) {
    if (std::find(threads.begin(), threads.end(), e.thread) == threads.end())
      threads.push_back(e.thread);
    if (e.is_access() && std::find(locs.begin(), locs.end(), e.loc) == locs.end())
      locs.push_back(e.loc);
  }
  threads_ = threads.size();
  locs_ = locs.size();
  for (const auto& e : alphabet_.labels()) {
    Info inf{};
    inf.op = e.op;
    inf.thread = static_cast<std::uint32_t>(std::find(threads.begin(), threads.end(), e.thread) - threads.begin());
    if (e.is_access())
      inf.loc = static_cast<std::uint32_t>(std::find(locs.begin(), locs.end(), e.loc) - locs.begin());
    info_.push_back(inf);
  }
}

CnstState SliceConsistencyDfa::initial() const {
  CnstState s;
  s.t2s.assign(threads_, 0);
  s.last_w.assign(locs_, 0);
  s.seen_w.assign(locs_, 0);
  s.forbidden_w.assign(locs_, 0);
  return s;
}

bool SliceConsistencyDfa::advance(CnstState& p, Label a, unsigned slice) const {
  if (slice < 1 || slice > k_ + 1)
    throw ArgumentError("slice " + std::to_string(slice) + " outside 1.." + std::to_string(k_ + 1));
  if (p.bottom)
    return false;
  const Info& inf = info_.at(a);
  if (p.t2s[inf.thread] > slice) {
    p.bottom = true;
    return false;
  }
  const std::uint64_t bit = std::uint64_t{1} << slice;
  if (inf.op == Op::Write) {
    if (p.forbidden_w[inf.loc] & bit) {
      p.bottom = true;
      return false;
    }
    p.last_w[inf.loc] = static_cast<std::uint8_t>(slice);
    p.seen_w[inf.loc] |= bit;
  } else if (inf.op == Op::Read) {
    const unsigned last = p.last_w[inf.loc];
    if (last > slice || (p.seen_w[inf.loc] & range_mask(last + 1, slice))) {
      p.bottom = true;
      return false;
    }
    p.forbidden_w[inf.loc] |= range_mask(std::max(1u, last), slice - 1);
  }
  p.t2s[inf.thread] = static_cast<std::uint8_t>(slice);
  return true;
}

unsigned SliceConsistencyDfa::floor(const CnstState& p) const {
  unsigned f = k_ + 1;
  for (auto s : p.t2s)
    f = std::min(f, std::max(1u, static_cast<unsigned>(s)));
  return f;
}

void SliceConsistencyDfa::forget_below(CnstState& p, unsigned floor) const {
  if (floor <= 1)
    return;
  const std::uint64_t below = range_mask(0, floor - 1);
  for (std::size_t x = 0; x < locs_; ++x) {
    // Future writes land at or above the floor.
    p.forbidden_w[x] &= ~below;
    // Reads look at (last write, slice]; a lower write can only move that
    // window down to the floor.
    const unsigned keep = std::min<unsigned>(floor, p.last_w[x]);
    if (keep > 0)
      p.seen_w[x] &= ~range_mask(0, keep - 1);
  }
}

CnstState SliceConsistencyDfa::step(const CnstState& p, Label a, unsigned slice) const {
  CnstState q = p;
  advance(q, a, slice);
  return q;
}

CnstState SliceConsistencyDfa::step(const CnstState& p, const Event& e, unsigned slice) const {
  return step(p, alphabet_.index(e), slice);
}

bool SliceConsistencyDfa::accepts(const AnnotatedTrace& at) const {
  if (at.k() != k_)
    throw ArgumentError("annotated trace has a different k");
  CnstState s = initial();
  for (const auto& ae : at.events())
    if (!advance(s, alphabet_.index(ae.event), ae.slice))
      return false;
  return true;
}

bool cnst_accepts(const AnnotatedTrace& at) {
  if (at.size() == 0)
    return true;
  return SliceConsistencyDfa(infer_alphabet(std::vector<Trace>{at.erased()}), at.k()).accepts(at);
}

MembershipDfa::MembershipDfa(Dfa spec, unsigned k) : spec_(std::move(spec)), k_(k) { check_k(k); }

MembState MembershipDfa::initial() const {
  MembState m;
  m.table.resize((k_ + 1) * spec_.states());
  for (unsigned i = 0; i <= k_; ++i)
    for (State p = 0; p < spec_.states(); ++p)
      m.table[i * spec_.states() + p] = p;
  return m;
}

void MembershipDfa::advance(MembState& m, Label a, unsigned slice) const {
  if (slice < 1 || slice > k_ + 1)
    throw ArgumentError("slice " + std::to_string(slice) + " outside 1.." + std::to_string(k_ + 1));
  auto row = m.table.begin() + static_cast<std::ptrdiff_t>((slice - 1) * spec_.states());
  for (std::size_t p = 0; p < spec_.states(); ++p)
    row[static_cast<std::ptrdiff_t>(p)] = spec_.next(row[static_cast<std::ptrdiff_t>(p)], a);
}

void MembershipDfa::forget_below(MembState& m, unsigned floor) const {
  if (floor <= 2)
    return;
  const std::size_t n = spec_.states();
  State q = spec_.initial();
  for (unsigned i = 1; i < floor; ++i)
    q = at(m, i, q);
  std::fill_n(m.table.begin(), n, q);
  for (unsigned i = 2; i < floor; ++i)
    for (State p = 0; p < n; ++p)
      m.table[(i - 1) * n + p] = p;
}

MembState MembershipDfa::step(const MembState& m, Label a, unsigned slice) const {
  MembState n = m;
  advance(n, a, slice);
  return n;
}

MembState MembershipDfa::step(const MembState& m, const Event& e, unsigned slice) const {
  return step(m, spec_.alphabet().index(e), slice);
}

bool MembershipDfa::accepting(const MembState& m) const {
  State p = spec_.initial();
  for (unsigned i = 1; i <= k_ + 1; ++i)
    p = at(m, i, p);
  return spec_.accepting(p);
}

namespace {

struct ProductHash {
  std::size_t operator()(const PreimageMonitor::Product& s) const noexcept {
    std::size_t h = s.cnst.bottom ? 0x9e3779b97f4a7c15ULL : 0;
    auto mix = [&h](std::uint64_t v) { h = (h ^ v) * 0x100000001b3ULL + (h >> 29); };
    for (auto v : s.cnst.t2s)
      mix(v);
    for (auto v : s.cnst.last_w)
      mix(v);
    for (auto v : s.cnst.seen_w)
      mix(v);
    for (auto v : s.cnst.forbidden_w)
      mix(v);
    for (auto v : s.memb.table)
      mix(v);
    return h;
  }
};

} // namespace

PreimageMonitor::PreimageMonitor(Dfa spec, unsigned k)
    : cnst_(spec.alphabet(), k), memb_(std::move(spec), k) {
  reset();
}

void PreimageMonitor::reset() {
  states_.clear();
  states_.push_back({cnst_.initial(), memb_.initial()});
  stats_ = {1, 0};
}

void PreimageMonitor::step(const Event& e) { step(alphabet().index(e)); }

void PreimageMonitor::step(Label a) {
  if (a >= alphabet().size())
    throw AlphabetError("label id out of range");
  std::unordered_set<Product, ProductHash> next;
  for (const auto& s : states_)
    for (unsigned i = 1; i <= memb_.k() + 1; ++i) {
      Product p{s.cnst, {}};
      if (!cnst_.advance(p.cnst, a, i))
        continue;
      p.memb = s.memb;
      memb_.advance(p.memb, a, i);
      const unsigned f = cnst_.floor(p.cnst);
      cnst_.forget_below(p.cnst, f);
      memb_.forget_below(p.memb, f);
      next.insert(std::move(p));
    }
  states_.assign(std::make_move_iterator(next.begin()), std::make_move_iterator(next.end()));
  ++stats_.steps;
  stats_.max_states = std::max(stats_.max_states, states_.size());
}

void PreimageMonitor::run(const Trace& t) {
  for (auto a : encode(alphabet(), t))
    step(a);
}

bool PreimageMonitor::verdict() const {
  return std::any_of(states_.begin(), states_.end(), [&](const Product& p) { return memb_.accepting(p.memb); });
}

MonitorResult monitor_preimage(const Nfa& spec, const Trace& t, unsigned k) {
  PreimageMonitor m(spec, k);
  m.run(t);
  return {m.verdict(), m.stats()};
}

} // namespace slicemon
