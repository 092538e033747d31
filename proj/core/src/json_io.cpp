#include "mcalg/json_io.hpp"

#include <fstream>

#include "mcalg/errors.hpp"
#include "mcalg/parser.hpp"

namespace mcalg {

namespace {

FinPreorder preorder_data(const Json& doc) {
  if (!doc.is_object() || !doc.contains("elements")) {
    throw Error("poset document needs an \"elements\" array");
  }
  std::vector<std::string> elements = doc.at("elements").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> pairs;
  if (doc.contains("leq")) {
    for (const Json& pair : doc.at("leq")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw Error("each \"leq\" entry must be a [a, b] pair");
      }
      pairs.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  }
  return FinPreorder(std::move(elements), pairs);
}

}  // namespace

PosetPtr poset_from_json(const Json& doc) {
  return std::make_shared<FinPoset>(preorder_data(doc));
}

PreorderPtr preorder_from_json(const Json& doc) {
  return std::make_shared<FinPreorder>(preorder_data(doc));
}

Json poset_to_json(const FinPreorder& poset) {
  Json doc;
  doc["elements"] = poset.elements();
  Json pairs = Json::array();
  for (std::size_t a = 0; a < poset.size(); ++a) {
    for (std::size_t b = 0; b < poset.size(); ++b) {
      if (a == b || !poset.leq(a, b)) continue;
      bool covering = true;
      for (std::size_t c = 0; c < poset.size() && covering; ++c) {
        if (c != a && c != b && poset.leq(a, c) && poset.leq(c, b)) covering = false;
      }
      if (covering) pairs.push_back(Json::array({poset.name(a), poset.name(b)}));
    }
  }
  doc["leq"] = std::move(pairs);
  return doc;
}

MonotoneMap function_from_json(const Json& doc, PreorderPtr fallback_domain) {
  PreorderPtr domain = fallback_domain;
  if (doc.is_object() && doc.contains("poset") && doc.at("poset").is_object()) {
    domain = poset_from_json(doc.at("poset"));
  }
  if (!domain) throw Error("function document carries no poset and none was supplied");

  const Json& values_doc = doc.is_object() && doc.contains("values") ? doc.at("values") : doc;
  if (!values_doc.is_object()) {
    throw Error("function document needs a \"values\" object");
  }
  std::vector<Unit> values(domain->size());
  std::vector<bool> assigned(domain->size(), false);
  for (const auto& [key, value] : values_doc.items()) {
    std::size_t i = domain->index_of(key);
    values[i] = Unit::parse(value.get<std::string>());
    assigned[i] = true;
  }
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    if (!assigned[i]) throw Error("no value for element '" + domain->name(i) + "'");
  }
  return MonotoneMap(std::move(domain), std::move(values));  // monotonicity validated here
}

Json function_to_json(const MonotoneMap& map) {
  Json values = Json::object();
  for (std::size_t i = 0; i < map.size(); ++i) {
    values[map.domain()->name(i)] = map.at(i).str();
  }
  return Json{{"values", std::move(values)}};
}

std::vector<MonotoneMap> functions_from_json(const Json& doc, PreorderPtr fallback_domain) {
  PreorderPtr domain = fallback_domain;
  const Json* list = nullptr;
  if (doc.is_array()) {
    list = &doc;
  } else if (doc.is_object()) {
    if (doc.contains("poset") && doc.at("poset").is_object()) {
      domain = poset_from_json(doc.at("poset"));
    }
    for (const char* key : {"generators", "targets", "functions"}) {
      if (doc.contains(key)) {
        list = &doc.at(key);
        break;
      }
    }
  }
  if (!list || !list->is_array()) {
    throw Error("expected an array of function documents");
  }
  std::vector<MonotoneMap> out;
  out.reserve(list->size());
  for (const Json& f : *list) out.push_back(function_from_json(f, domain));
  return out;
}

Json report_to_json(const ConformanceReport& report) {
  Json doc;
  doc["axiom"] = report.id.str();
  doc["strategy"] = report.strategy;
  doc["passed"] = report.passed;
  doc["cases"] = report.cases;
  if (report.counterexample) {
    Json ce;
    ce["assignment"] = report.counterexample->rendered;
    ce["detail"] = report.counterexample->detail;
    doc["counterexample"] = std::move(ce);
  }
  return doc;
}

Json unit_report_to_json(const UnitReport& report) {
  Json doc;
  doc["injective"] = report.injective;
  if (report.merged) doc["merged"] = Json::array({report.merged->first, report.merged->second});
  doc["surjective"] = report.surjective;
  if (report.failing_target) doc["failing_target"] = *report.failing_target;
  doc["order_iso"] = report.order_iso;
  if (report.order_violation) {
    doc["order_violation"] =
        Json::array({report.order_violation->first, report.order_violation->second});
  }
  if (!report.certificates.empty()) {
    doc["epsilon"] = report.epsilon.str();
    Json certs = Json::array();
    for (const ApproxCertificate& c : report.certificates) {
      certs.push_back(Json{{"target", c.target},
                           {"term", render_term(c.term)},
                           {"error", c.error.str()}});
    }
    doc["certificates"] = std::move(certs);
  }
  return doc;
}

Json trace_to_json(const PosetPtr& poset, const ApproximationTrace& trace) {
  auto values_obj = [&](const std::vector<Unit>& values) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < values.size(); ++i) obj[poset->name(i)] = values[i].str();
    return obj;
  };
  auto names = [&](const std::vector<std::size_t>& points) {
    Json arr = Json::array();
    for (std::size_t p : points) arr.push_back(poset->name(p));
    return arr;
  };

  Json anchors = Json::array();
  for (const AnchorTrace& a : trace.anchors) {
    Json separators = Json::array();
    for (const SeparatorInfo& s : a.separators) {
      separators.push_back(Json{{"target", poset->name(s.target)},
                                {"generator", s.generator},
                                {"cut", s.cut.str()},
                                {"copies", s.copies},
                                {"term", render_term(s.term)}});
    }
    anchors.push_back(Json{{"anchor", poset->name(a.anchor)},
                           {"lambda", a.anchor_value.str()},
                           {"outside", names(a.outside)},
                           {"separators", std::move(separators)},
                           {"term", render_term(a.term)},
                           {"values", values_obj(a.values)},
                           {"improved", names(a.improved)}});
  }
  return Json{{"epsilon", trace.epsilon.str()},
              {"anchors", std::move(anchors)},
              {"term", render_term(trace.term)},
              {"values", values_obj(trace.values)},
              {"error", trace.error.str()}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw Error("cannot parse '" + path + "': " + e.what());
  }
  return doc;
}

void save_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << doc.dump(2) << "\n";
}

}  // namespace mcalg
