#include "ioident/report.hpp"

#include <sstream>

#include <json.hpp>

namespace ioident {

std::string equality_status_name(EqualityStatus s) {
  switch (s) {
    case EqualityStatus::CertifiedUpToDegree: return "equality_certified_up_to_degree";
    case EqualityStatus::FirstIntegralFound: return "first_integral_found";
    case EqualityStatus::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

AnalysisReport analyze(const Model& m, const AnalysisSettings& s) {
  AnalysisReport r;
  r.params = m.params;
  r.states = m.states;
  r.inputs = m.inputs;
  r.outputs = m.outputs;
  r.settings = s;
  r.depth_limit = s.depth.value_or(m.n());

  std::vector<RatFun> checks;
  for (const auto& expr : s.check_functions) checks.push_back(parse_rational(expr, m.param_ring));

  DiffRingPtr ring = make_diff_ring(m);
  Ranking ranking = Ranking::standard(*ring);
  EliminationOptions opts;
  opts.max_depth = r.depth_limit;
  opts.verify = {s.seed, s.trials, s.series_order};

  std::optional<EliminationResult> elim;
  try {
    elim = io_equations(m, ranking, opts);
  } catch (const DepthExhaustedError& e) {
    r.error = e.what();
    r.depth_used = e.depth();
    for (const auto& p : e.partial()) r.io_equations.push_back(to_string(p, *ring, ranking));
    for (const auto& p : e.eliminated()) r.eliminated.push_back(to_string(p, *ring, ranking));
  }

  if (elim) {
    const CharPresentation& c = elim->presentation;
    r.complete = true;
    r.depth_used = elim->depth;
    r.verification = elim->verification;
    for (const auto& p : c.elements) r.io_equations.push_back(to_string(p, *ring, ranking));
    FieldDescription field = io_identifiable_field(c);
    for (const auto& g : field.generators) r.field_generators.push_back(to_string(g));
    for (const auto& cert : wronskian_certificates(c, m, s.trials, s.seed, s.series_order)) {
      CertificateEntry e;
      e.coefficient = to_string(cert.coefficient);
      e.equation = cert.element;
      e.identifiable = cert.status == CertificateStatus::IdentifiableByWronskian;
      if (cert.witness) {
        for (const auto& z : cert.witness->subset) e.witness_subset.push_back(to_string(z, *ring, ranking));
        e.witness_determinant = to_string(cert.witness->determinant, *ring, ranking);
        e.witness_seed = cert.witness->sample_seed;
      }
      r.certificates.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < checks.size(); ++i)
      r.membership_queries.push_back({s.check_functions[i], field_membership(checks[i], field)});
  } else {
    for (const auto& expr : s.check_functions) r.membership_queries.push_back({expr, std::nullopt});
  }

  EqualityCertificate eq = equality_certificate(m, s.first_integral_degree);
  r.equality = eq.status;
  for (const auto& p : eq.first_integrals) r.first_integrals.push_back(to_string(p));
  return r;
}

namespace {

using nlohmann::ordered_json;

std::string emit_json(const AnalysisReport& r) {
  ordered_json j;
  j["model"] = {{"n", r.states.size()},
                {"m", r.outputs.size()},
                {"kappa", r.inputs.size()},
                {"lambda", r.params.size()},
                {"params", r.params},
                {"states", r.states},
                {"inputs", r.inputs},
                {"outputs", r.outputs}};
  ordered_json settings;
  settings["seed"] = r.settings.seed;
  settings["depth"] = r.depth_limit;
  if (r.settings.series_order) settings["series_order"] = r.settings.series_order;
  else settings["series_order"] = "auto";
  settings["trials"] = r.settings.trials;
  settings["first_integral_degree"] = r.settings.first_integral_degree;
  j["settings"] = settings;
  j["io_equations"] = r.io_equations;
  j["field_generators"] = r.field_generators;
  ordered_json certs = ordered_json::array();
  for (const auto& c : r.certificates) {
    ordered_json e;
    e["coefficient"] = c.coefficient;
    e["equation"] = c.equation;
    e["status"] = c.identifiable ? "identifiable_by_wronskian" : "no_certificate";
    if (c.identifiable)
      e["witness"] = {{"subset", c.witness_subset},
                      {"determinant", c.witness_determinant},
                      {"sample_seed", c.witness_seed}};
    else
      e["witness"] = nullptr;
    certs.push_back(e);
  }
  j["certificates"] = certs;
  j["first_integrals"] = r.first_integrals;
  j["equality_status"] = equality_status_name(r.equality);
  ordered_json queries = ordered_json::array();
  for (const auto& q : r.membership_queries) {
    ordered_json e;
    e["expression"] = q.expression;
    if (q.member) e["member"] = *q.member;
    else e["member"] = nullptr;
    queries.push_back(e);
  }
  j["membership_queries"] = queries;
  const auto& v = r.verification;
  ordered_json ver;
  ver["presentation_found"] = r.complete;
  ver["depth_used"] = r.depth_used;
  ver["autoreduced"] = v.autoreduced;
  ver["initials"] = v.initials;
  ver["content_free"] = v.content_free;
  ver["monic"] = v.monic;
  ver["series_vanishing"] = v.series;
  ver["generators_reduce"] = v.reduction;
  if (!r.complete) {
    ver["error"] = r.error;
    ver["eliminated"] = r.eliminated;
  }
  j["verification"] = ver;
  return j.dump(2) + "\n";
}

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

const char* pass(bool b) { return b ? "pass" : "FAIL"; }

std::string emit_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "model: " << r.states.size() << " states, " << r.outputs.size() << " outputs, " << r.inputs.size()
     << " inputs, " << r.params.size() << " parameters\n";
  os << "params: " << join(r.params) << "\n";
  os << "states: " << join(r.states) << "\n";
  if (!r.inputs.empty()) os << "inputs: " << join(r.inputs) << "\n";
  os << "outputs: " << join(r.outputs) << "\n";
  os << "settings: seed " << r.settings.seed << ", depth " << r.depth_limit << ", series order "
     << (r.settings.series_order ? std::to_string(r.settings.series_order) : std::string("auto")) << ", trials "
     << r.settings.trials << ", first-integral degree " << r.settings.first_integral_degree << "\n";
  os << "\n";
  if (!r.complete) os << "no verified presentation: " << r.error << "\n";
  for (const auto& e : r.io_equations) os << (r.complete ? "IO: " : "partial: ") << e << "\n";
  for (const auto& e : r.eliminated) os << "eliminated: " << e << "\n";
  if (r.complete) {
    os << "field of IO-identifiable functions: Q(" << join(r.field_generators) << ")\n";
    for (const auto& c : r.certificates) {
      os << "certificate: " << c.coefficient << " (equation " << c.equation + 1 << "): ";
      if (c.identifiable)
        os << "identifiable, Wronskian of {" << join(c.witness_subset) << "} is nonzero at sample " << c.witness_seed
           << "\n";
      else
        os << "no certificate (this does not show non-identifiability)\n";
    }
  }
  os << "first integrals (degree <= " << r.settings.first_integral_degree << "): "
     << (r.first_integrals.empty() ? std::string("none") : join(r.first_integrals)) << "\n";
  switch (r.equality) {
    case EqualityStatus::CertifiedUpToDegree:
      os << "equality: no polynomial first integral up to degree " << r.settings.first_integral_degree
         << " (partial certificate, rational first integrals not excluded)\n";
      break;
    case EqualityStatus::FirstIntegralFound:
      os << "equality: first integral found, identifiable and IO-identifiable fields may differ\n";
      break;
    case EqualityStatus::Inconclusive:
      os << "equality: inconclusive\n";
      break;
  }
  for (const auto& q : r.membership_queries)
    os << "membership: " << q.expression << " -> " << (q.member ? (*q.member ? "true" : "false") : "unknown") << "\n";
  const auto& v = r.verification;
  os << "verification: autoreduced " << pass(v.autoreduced) << ", initials " << pass(v.initials) << ", content "
     << pass(v.content_free) << ", monic " << pass(v.monic) << ", series " << pass(v.series) << ", reduction "
     << pass(v.reduction) << " (depth " << r.depth_used << ")\n";
  return os.str();
}

}  // namespace

std::string emit_report(const AnalysisReport& r, ReportFormat f) {
  return f == ReportFormat::Json ? emit_json(r) : emit_text(r);
}

}  // namespace ioident
