#include "linsys/verify.hpp"

#include <algorithm>

#include "linsys/generators.hpp"
#include "linsys/groups.hpp"
#include "linsys/io.hpp"

namespace linsys::verify {

using nlohmann::json;

std::string_view status_name(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    case Status::Error: return "error";
  }
  return "unknown";
}

std::size_t VerificationReport::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(
      details.begin(), details.end(), [s](const InstanceRecord& r) { return r.status == s; }));
}

bool VerificationReport::conclusive_pass() const {
  return passed && count(Status::Inconclusive) == 0 && count(Status::Error) == 0;
}

json report_json(const VerificationReport& r) {
  json doc = json::object();
  doc["format_version"] = io::kFormatVersion;
  doc["theorem_id"] = r.theorem_id;
  doc["instances_checked"] = r.instances_checked;
  doc["instances_filtered"] = r.instances_filtered;
  doc["passed"] = r.passed;
  doc["inconclusive"] = r.count(Status::Inconclusive) + r.count(Status::Error);
  doc["counterexample"] = r.counterexample ? *r.counterexample : json(nullptr);
  json details = json::array();
  for (const auto& d : r.details) {
    details.push_back({{"id", d.id}, {"status", status_name(d.status)}, {"data", d.data}});
  }
  doc["details"] = details;
  doc["summary"] = r.summary;
  return doc;
}

std::vector<NamedInstance> random_corpus(std::uint64_t first_seed, std::size_t count) {
  std::vector<NamedInstance> out;
  for (std::uint64_t s = first_seed; s < first_seed + count; ++s) {
    const std::size_t points = 8 + s % 7;
    const std::size_t lines = 6 + (s / 7) % 7;
    out.push_back({"random-" + std::to_string(s), random_linear_system(s, points, lines, 2, 4)});
  }
  return out;
}

namespace {

class ReportBuilder {
 public:
  explicit ReportBuilder(std::string id) { report_.theorem_id = std::move(id); }

  void record(std::string id, Status status, json data) {
    report_.details.push_back({std::move(id), status, std::move(data)});
  }

  // First failure becomes the counterexample; later ones stay in details.
  void fail(std::string id, const LinearSystem& ls, std::string reason, json data) {
    if (!report_.counterexample) {
      report_.counterexample = json{{"instance_id", id},
                                    {"instance", io::instance_json(ls)},
                                    {"reason", reason},
                                    {"data", data}};
    }
    data["reason"] = std::move(reason);
    record(std::move(id), Status::Fail, std::move(data));
  }

  void fail_global(std::string reason, json data) {
    if (!report_.counterexample) {
      report_.counterexample = json{{"reason", std::move(reason)}, {"data", std::move(data)}};
    }
  }

  void filtered() { ++report_.instances_filtered; }
  json& summary() { return report_.summary; }

  VerificationReport finish() {
    report_.instances_checked = report_.details.size();
    report_.passed = !report_.counterexample.has_value();
    return std::move(report_);
  }

 private:
  VerificationReport report_;
};

std::pair<Certificate, Certificate> certificates(const LinearSystem& ls, const VerifyOptions& o) {
  if (o.provider) return o.provider(ls);
  return {tau_exact(ls, o.solve), nu2_exact(ls, o.solve)};
}

json cert_summary(const Certificate& c) {
  return json{{"value", c.value}, {"optimal", c.optimal}, {"witness", c.witness}};
}

// Returns false (and records the failure) when a certificate does not verify.
bool certificates_sound(ReportBuilder& b, const NamedInstance& inst, const Certificate& tau,
                        const Certificate& nu2) {
  const bool tau_ok = certificate_is_sound(inst.system, tau);
  const bool nu2_ok = certificate_is_sound(inst.system, nu2);
  if (tau_ok && nu2_ok) return true;
  b.fail(inst.id, inst.system, tau_ok ? "nu2 certificate does not verify" : "tau certificate does not verify",
         json{{"tau", cert_summary(tau)}, {"nu2", cert_summary(nu2)}});
  return false;
}

}  // namespace

VerificationReport verify_eq1(const std::vector<NamedInstance>& corpus, const VerifyOptions& opts) {
  ReportBuilder b("eq1");
  for (const auto& inst : corpus) {
    const auto [tau, nu2] = certificates(inst.system, opts);
    if (!certificates_sound(b, inst, tau, nu2)) continue;
    json data{{"tau", tau.value}, {"nu2", nu2.value}, {"lines", inst.system.num_lines()}};
    if (!tau.optimal || !nu2.optimal) {
      b.record(inst.id, Status::Inconclusive, data);
      continue;
    }
    if (inst.system.num_lines() <= nu2.value) {
      b.filtered();
      continue;
    }
    const auto bounds = bounds_from(tau.value, nu2.value);
    data["lower"] = bounds.eq1_lower;
    data["upper"] = bounds.eq1_upper;
    if (bounds.eq1_holds) {
      b.record(inst.id, Status::Pass, data);
    } else {
      b.fail(inst.id, inst.system, "ceil(nu2/2) <= tau <= nu2(nu2-1)/2 violated", data);
    }
  }
  return b.finish();
}

VerificationReport verify_thm21(const std::vector<NamedInstance>& corpus, const VerifyOptions& opts) {
  ReportBuilder b("thm21");
  for (const auto& inst : corpus) {
    if (inst.system.num_points() < 2) {
      b.filtered();
      continue;
    }
    const auto [tau, nu2] = certificates(inst.system, opts);
    if (!certificates_sound(b, inst, tau, nu2)) continue;
    if (!tau.optimal || !nu2.optimal) {
      b.record(inst.id, Status::Inconclusive, json{{"tau", tau.value}, {"nu2", nu2.value}});
      continue;
    }
    const auto h = thm21_hypothesis_given(inst.system, nu2.value);
    if (!h.more_lines_than_nu2 || !h.applies) {
      b.filtered();
      continue;
    }
    json data{{"tau", tau.value},         {"nu2", nu2.value},
              {"lines", h.line_count},    {"deg_p", h.max_deg_p},
              {"deg_q", h.second_deg_q}, {"threshold", h.threshold}};
    if (tau.value + 1 <= nu2.value) {
      b.record(inst.id, Status::Pass, data);
    } else {
      b.fail(inst.id, inst.system, "tau > nu2 - 1 although the line-count hypothesis holds", data);
    }
  }
  return b.finish();
}

bool no_small_transversal_off_pq(std::int64_t n, std::size_t size) {
  const auto ls = cnn(AbelianGroup::cyclic(n));
  const auto p = ls.index_of("p");
  const auto q = ls.index_of("q");
  std::vector<PointIndex> pool;
  for (PointIndex x = 0; x < ls.num_points(); ++x) {
    if (x != p && x != q) pool.push_back(x);
  }
  if (size > pool.size()) return true;
  // Lexicographic walk over all size-subsets of the pool.
  std::vector<std::size_t> pick(size);
  for (std::size_t i = 0; i < size; ++i) pick[i] = i;
  std::vector<PointIndex> chosen(size);
  for (;;) {
    for (std::size_t i = 0; i < size; ++i) chosen[i] = pool[pick[i]];
    if (is_transversal(ls, chosen)) return false;
    std::size_t i = size;
    while (i > 0 && pick[i - 1] == pool.size() - size + (i - 1)) --i;
    if (i == 0) return true;
    ++pick[i - 1];
    for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
}

VerificationReport verify_props_31_32(const std::vector<std::int64_t>& orders, PropSelection which,
                                      const VerifyOptions& opts) {
  const char* id = which == PropSelection::Tau   ? "prop31"
                   : which == PropSelection::Nu2 ? "prop32"
                                                 : "prop31+prop32";
  ReportBuilder b(id);
  // Exhaustive subset scan stays cheap up to n = 5 (C(20,5) subsets).
  constexpr std::int64_t kExhaustiveLimit = 5;
  for (auto n : orders) {
    const auto inst_id = "cnn-z" + std::to_string(n);
    LinearSystem ls;
    try {
      ls = cnn(AbelianGroup::cyclic(n));
    } catch (const Error& e) {
      b.record(inst_id, Status::Error,
               json{{"error", std::string(errc_name(e.code()))}, {"message", e.what()}});
      continue;
    }
    const auto expected = static_cast<std::size_t>(n) + 1;
    json data{{"n", n}, {"expected", expected}};
    std::vector<std::string> failures;
    bool inconclusive = false;

    if (which != PropSelection::Nu2) {
      const auto tau = opts.provider ? opts.provider(ls).first : tau_exact(ls, opts.solve);
      data["tau"] = cert_summary(tau);
      if (!certificate_is_sound(ls, tau)) failures.push_back("tau certificate does not verify");
      if (!tau.optimal) inconclusive = true;
      if (tau.optimal && tau.value != expected) failures.push_back("tau != n + 1");
      if (!tau.optimal && tau.value < expected) failures.push_back("transversal smaller than n + 1");

      // One point of each disjoint line plus p and q.
      std::vector<PointIndex> proof;
      for (LineIndex l = 0; l + 1 < static_cast<LineIndex>(n); ++l) {
        proof.push_back(ls.line_points(l).front());
      }
      proof.push_back(ls.index_of("p"));
      proof.push_back(ls.index_of("q"));
      const bool proof_ok = is_transversal(ls, proof) && proof.size() == expected;
      data["proof_transversal_ok"] = proof_ok;
      if (!proof_ok) failures.push_back("explicit (n+1)-transversal does not verify");

      if (n <= kExhaustiveLimit) {
        const bool none = no_small_transversal_off_pq(n, static_cast<std::size_t>(n));
        data["no_n_transversal_off_pq"] = none;
        if (!none) failures.push_back("found an n-point transversal avoiding p and q");
      }
    }
    if (which != PropSelection::Tau) {
      const auto nu2 = opts.provider ? opts.provider(ls).second : nu2_exact(ls, opts.solve);
      data["nu2"] = cert_summary(nu2);
      if (!certificate_is_sound(ls, nu2)) failures.push_back("nu2 certificate does not verify");
      if (!nu2.optimal) inconclusive = true;
      if (nu2.optimal && nu2.value != expected) failures.push_back("nu2 != n + 1");
      if (!nu2.optimal && nu2.value > expected) failures.push_back("2-packing larger than n + 1");

      // The n-1 disjoint lines plus two lines through p.
      std::vector<LineIndex> proof;
      for (LineIndex l = 0; l <= static_cast<LineIndex>(n); ++l) proof.push_back(l);
      const bool proof_ok = is_2packing(ls, proof);
      data["proof_packing_ok"] = proof_ok;
      if (!proof_ok) failures.push_back("explicit (n+1)-packing does not verify");
    }

    if (!failures.empty()) {
      data["failures"] = failures;
      b.fail(inst_id, ls, failures.front(), data);
    } else {
      b.record(inst_id, inconclusive ? Status::Inconclusive : Status::Pass, data);
    }
  }
  return b.finish();
}

VerificationReport verify_thm32_minimality(const std::vector<std::int64_t>& orders,
                                           const VerifyOptions& opts) {
  ReportBuilder b("thm32");
  for (auto n : orders) {
    const auto inst_id = "cnn-z" + std::to_string(n);
    LinearSystem ls;
    try {
      ls = cnn(AbelianGroup::cyclic(n));
    } catch (const Error& e) {
      b.record(inst_id, Status::Error,
               json{{"error", std::string(errc_name(e.code()))}, {"message", e.what()}});
      continue;
    }
    const auto nu2 = opts.provider ? opts.provider(ls).second : nu2_exact(ls, opts.solve);
    if (!nu2.optimal) {
      b.record(inst_id, Status::Inconclusive, json{{"n", n}, {"nu2", nu2.value}});
      continue;
    }
    const auto st = stats(ls);
    const auto h = thm21_hypothesis_given(ls, nu2.value);
    const auto lines = static_cast<std::int64_t>(ls.num_lines());
    const auto by_pq = static_cast<std::int64_t>(h.max_deg_p + h.second_deg_q + nu2.value) - 2;
    const auto by_delta = static_cast<std::int64_t>(2 * st.max_degree + nu2.value) - 2;
    json data{{"n", n},
              {"lines", lines},
              {"deg_p", h.max_deg_p},
              {"deg_q", h.second_deg_q},
              {"max_degree", st.max_degree},
              {"nu2", nu2.value},
              {"threshold", h.threshold},
              {"applies", h.applies}};
    if (lines == by_pq && lines == by_delta && !h.applies && lines == h.threshold + 1) {
      b.record(inst_id, Status::Pass, data);
    } else {
      b.fail(inst_id, ls, "|L| is not one above the line-count threshold", data);
    }
  }
  return b.finish();
}

namespace {

enum class Membership { Member, NotMember, Unknown };

struct MemberInfo {
  Membership membership = Membership::NotMember;
  std::size_t rank = 0;
  std::size_t tau = 0;
  std::size_t nu2 = 0;
};

// Intersecting, rank r, tau = nu2 = r.
MemberInfo classify(const LinearSystem& ls, const VerifyOptions& opts) {
  MemberInfo info;
  const auto st = stats(ls);
  info.rank = st.rank;
  if (!st.is_intersecting || st.rank == 0) return info;
  const auto [tau, nu2] = certificates(ls, opts);
  info.tau = tau.value;
  info.nu2 = nu2.value;
  if (!tau.optimal || !nu2.optimal) {
    info.membership = Membership::Unknown;
  } else if (tau.value == st.rank && nu2.value == st.rank) {
    info.membership = Membership::Member;
  }
  return info;
}

}  // namespace

VerificationReport verify_lemma41(const std::vector<NamedInstance>& candidates,
                                  const VerifyOptions& opts) {
  ReportBuilder b("lemma41");
  for (const auto& inst : candidates) {
    const auto info = classify(inst.system, opts);
    if (info.membership == Membership::NotMember) {
      b.filtered();
      continue;
    }
    json data{{"rank", info.rank}, {"tau", info.tau}, {"nu2", info.nu2}};
    if (info.membership == Membership::Unknown) {
      b.record(inst.id, Status::Inconclusive, data);
      continue;
    }
    const auto st = stats(inst.system);
    const bool uniform = st.uniform_r == info.rank;
    bool degrees_ok = true;
    for (const auto& line : inst.system.lines()) {
      for (auto p : line.elements()) degrees_ok = degrees_ok && st.degree_of[p] >= 2;
    }
    data["uniform"] = uniform;
    data["line_points_degree_at_least_2"] = degrees_ok;
    if (uniform && degrees_ok) {
      b.record(inst.id, Status::Pass, data);
    } else {
      b.fail(inst.id, inst.system,
             uniform ? "a point on a line has degree below 2" : "member is not uniform", data);
    }
  }
  return b.finish();
}

VerificationReport verify_lemmas_42_43(const std::vector<NamedInstance>& candidates,
                                       const VerifyOptions& opts) {
  ReportBuilder b("lemmas4243");
  for (const auto& inst : candidates) {
    const auto info = classify(inst.system, opts);
    if (info.membership == Membership::NotMember) {
      b.filtered();
      continue;
    }
    json data{{"rank", info.rank}, {"tau", info.tau}, {"nu2", info.nu2}};
    if (info.membership == Membership::Unknown) {
      b.record(inst.id, Status::Inconclusive, data);
      continue;
    }
    const auto reduced = reduce_low_degree(inst.system);
    const auto st = stats(reduced);
    const auto r = info.rank;
    std::size_t worst_double = 0;
    for (const auto& line : reduced.lines()) {
      std::size_t doubles = 0;
      for (auto p : line.elements()) doubles += st.degree_of[p] == 2 ? 1 : 0;
      worst_double = std::max(worst_double, doubles);
    }
    const auto lines = reduced.num_lines();
    const auto lower = 3 * (r - 1) + 1;
    const auto upper = r * r - r + 1;
    data["max_degree_2_points_on_a_line"] = worst_double;
    data["max_degree"] = st.max_degree;
    data["lines"] = lines;
    data["line_bounds"] = {lower, upper};
    std::vector<std::string> failures;
    if (worst_double > 1) failures.emplace_back("a line has two points of degree 2");
    if (st.max_degree > r) failures.emplace_back("maximum degree exceeds r");
    if (lines < lower || lines > upper) failures.emplace_back("line count outside [3(r-1)+1, r^2-r+1]");
    if (failures.empty()) {
      b.record(inst.id, Status::Pass, data);
    } else {
      data["failures"] = failures;
      b.fail(inst.id, inst.system, failures.front(), data);
    }
  }
  return b.finish();
}

std::vector<Cor42Member> cor42_lattice(const VerifyOptions& opts) {
  const auto plane = projective_plane(3);
  const auto plane_key = canonical_key(plane);
  std::vector<Cor42Member> out;
  for (auto& ls : enumerate_between(chat(), plane)) {
    Cor42Member m;
    const auto st = stats(ls);
    const auto [tau, nu2] = certificates(ls, opts);
    m.tau = tau.value;
    m.nu2 = nu2.value;
    m.optimal = tau.optimal && nu2.optimal;
    m.in_a = st.uniform_r == std::optional<std::size_t>{4} && st.is_intersecting && nu2.value == 4;
    m.in_b = st.is_intersecting && st.rank == 4 && tau.value == 4 && nu2.value == 4;
    m.is_plane = canonical_key(ls) == plane_key;
    m.system = std::move(ls);
    out.push_back(std::move(m));
  }
  return out;
}

VerificationReport verify_cor42(const VerifyOptions& opts) {
  ReportBuilder b("cor42");
  const auto members = cor42_lattice(opts);
  std::size_t a_size = 0;
  std::size_t b_size = 0;
  bool plane_in_both = false;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& m = members[i];
    const auto st = stats(m.system);
    const auto id = "member-" + std::to_string(i);
    json data{{"points", st.num_points}, {"lines", st.num_lines},
              {"rank", st.rank},         {"uniform", st.uniform_r.has_value()},
              {"intersecting", st.is_intersecting},
              {"tau", m.tau},            {"nu2", m.nu2},
              {"in_a", m.in_a},          {"in_b", m.in_b},
              {"is_plane", m.is_plane}};
    a_size += m.in_a ? 1 : 0;
    b_size += m.in_b ? 1 : 0;
    plane_in_both = plane_in_both || (m.is_plane && m.in_a && m.in_b);
    if (!m.optimal) {
      b.record(id, Status::Inconclusive, data);
    } else if (m.in_a != m.in_b) {
      b.fail(id, m.system, "member lies in exactly one of the two families", data);
    } else {
      b.record(id, Status::Pass, data);
    }
  }
  b.summary() = json{{"members", members.size()}, {"a_size", a_size}, {"b_size", b_size},
                     {"plane_in_both", plane_in_both}};
  if (a_size == 0 || !plane_in_both) {
    b.fail_global("families empty or missing the projective plane", b.summary());
  }
  return b.finish();
}

}  // namespace linsys::verify
