#include "qmsplit/report.hpp"

#include <cmath>
#include <cstdio>

namespace qmsplit {

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

Json to_json(const QuadExt& q) { return to_string(q); }

Json to_json(const ApReal& x) { return x.to_string(kReportDigits); }

Json to_json(const ApComplex& z) { return Json{{"re", to_json(z.real())}, {"im", to_json(z.imag())}}; }

Json to_json(const QuatElement& q) {
    Json coords = Json::array();
    for (const auto& c : q.coords()) coords.push_back(to_json(c));
    return coords;
}

Json to_json(const RationalMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const UnitSample& u) {
    Json coords = Json::array();
    for (const auto& c : u.coords) coords.push_back(to_json(c));
    return Json{{"coords", coords}, {"element", to_json(u.element)}, {"elliptic", u.is_elliptic}};
}

Json to_json(const CMPoint& p) {
    Json coords = Json::array();
    for (const auto& c : p.coords) coords.push_back(to_json(c));
    Json out{{"mu", to_json(p.mu)}, {"coords", coords}, {"tau", to_json(p.tau.tau())},
             {"tau_prime", to_json(p.tau_prime)}};
    if (const auto& q = p.tau.exact())
        out["quadratic"] = Json{{"c2", to_json(q->c2)}, {"c1", to_json(q->c1)}, {"c0", to_json(q->c0)}};
    out["char_poly"] = Json{{"trace", to_json(p.char_trace)}, {"norm", to_json(p.char_norm)}};
    return out;
}

Json to_json(const Section& s) {
    Json f = Json::array(), a = Json::array();
    for (const auto& x : s.f) f.push_back(to_json(x));
    for (const auto& x : s.a) a.push_back(to_json(x));
    return Json{{"f", f}, {"a", a}, {"b", to_json(s.b)}};
}

Json to_json(const SplittingReport& r) {
    Json out{{"kind", to_string(r.kind)}};
    out["h0"] = r.h0 ? Json(*r.h0) : Json(nullptr);
    out["verdict"] = to_string(r.verdict);
    if (r.fiber) {
        out["det_witness"] = to_json(r.fiber->det_witness);
        out["det_magnitude"] = to_json(abs(r.fiber->det_witness));
        out["exact_det"] = to_json(r.fiber->exact_det);
        out["factored_defect"] = to_json(r.fiber->factored_defect);
        out["det_nonzero"] = r.fiber->witness_verdict.nonzero;
    }
    if (r.curve) {
        Json v = Json::array();
        for (const auto& x : r.curve->eigenvector) v.push_back(to_json(x));
        out["eigenvector"] = v;
        out["eigen_residual"] = to_json(r.curve->eigen_residual);
        out["dphi_tau_form"] = to_json(r.curve->dphi_tau);
    }
    if (r.dphi_value) {
        out["dphi"] = format_complex(*r.dphi_value);
        out["dphi_value"] = to_json(*r.dphi_value);
    }
    Json sections = Json::array();
    for (const auto& s : r.sections) sections.push_back(to_json(s));
    out["sections"] = sections;
    return out;
}

namespace {

std::string short_number(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

}  // namespace

std::string format_complex(const ApComplex& z, int digits) {
    const double re = z.real().to_double();
    const double im = z.imag().to_double();
    const bool has_re = std::fabs(re) >= 1e-30;
    const bool has_im = std::fabs(im) >= 1e-30;
    if (!has_re && !has_im) return "0";
    std::string out = has_re ? short_number(re, digits) : "";
    if (has_im) {
        std::string coef = short_number(std::fabs(im), digits);
        if (coef == "1") coef.clear();
        if (im < 0)
            out += "-";
        else if (has_re)
            out += "+";
        out += coef + "i";
    }
    return out;
}

ApComplex parse_complex(const std::string& text, mpfr_prec_t prec) {
    if (text == "i") return ApComplex::i(prec);
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("expected 're,im', got '" + text + "'");
    return ApComplex(ApReal(parse_rational(text.substr(0, comma)), prec),
                     ApReal(parse_rational(text.substr(comma + 1)), prec));
}

}  // namespace qmsplit
