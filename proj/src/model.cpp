#include "freespectra/model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace freespectra::dist {

namespace {

constexpr double kPoleTol = 1e-13;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Complex pow_int(Complex s, int m) {
    Complex r(1.0, 0.0);
    for (int i = 0; i < m; ++i) r *= s;
    return r;
}

}  // namespace

OperatorModel OperatorModel::cyclic(int m) {
    if (m < 2) throw InvalidInput("cyclic order must be >= 2");
    OperatorModel model;
    model.kind_ = Kind::Cyclic;
    model.m_ = m;
    model.norm_bound_ = 1.0;
    return model;
}

OperatorModel OperatorModel::arcsine() {
    OperatorModel model;
    model.kind_ = Kind::ArcsineShift;
    model.norm_bound_ = 2.0;
    return model;
}

OperatorModel OperatorModel::rotated(OperatorModel base, Complex phase) {
    if (std::abs(std::abs(phase) - 1.0) > 1e-12)
        throw InvalidInput("rotation phase must have modulus 1");
    OperatorModel model;
    model.kind_ = Kind::Rotated;
    model.phase_ = phase;
    model.norm_bound_ = base.norm_bound();
    model.base_ = std::make_shared<OperatorModel>(std::move(base));
    return model;
}

OperatorModel OperatorModel::moment_series(std::vector<Complex> moments, double norm_bound) {
    if (moments.empty() || std::abs(moments[0] - Complex(1.0, 0.0)) > 1e-14)
        throw InvalidInput("moment series must start with m0 = 1");
    if (!(norm_bound > 0.0)) throw InvalidInput("moment series norm bound must be positive");
    OperatorModel model;
    model.kind_ = Kind::MomentSeries;
    model.moments_ = std::move(moments);
    model.norm_bound_ = norm_bound;
    return model;
}

bool OperatorModel::self_adjoint() const {
    switch (kind_) {
        case Kind::Cyclic:
            return m_ == 2;
        case Kind::ArcsineShift:
            return true;
        case Kind::MomentSeries:
            for (const auto& mk : moments_)
                if (std::abs(mk.imag()) > 0.0) return false;
            return true;
        case Kind::Rotated:
            return base_->self_adjoint() && std::abs(phase_.imag()) == 0.0;
    }
    return false;
}

Complex OperatorModel::mgf(Complex s) const {
    switch (kind_) {
        case Kind::Cyclic: {
            const Complex d = Complex(1.0, 0.0) - pow_int(s, m_);
            if (std::abs(d) < kPoleTol) throw PoleError("mgf: s^m = 1 for cyclic model");
            return 1.0 / d;
        }
        case Kind::ArcsineShift: {
            const Complex w = Complex(1.0, 0.0) - 4.0 * s * s;
            if (std::abs(w) < kPoleTol ||
                (w.real() < 0.0 && std::abs(w.imag()) < kPoleTol * (1.0 + std::abs(w))))
                throw PoleError("mgf: 1-4s^2 on the branch cut");
            return 1.0 / std::sqrt(w);  // principal branch, f(0)=1
        }
        case Kind::Rotated:
            return base_->mgf(phase_ * s);
        case Kind::MomentSeries: {
            if (std::abs(s) > 0.5 / norm_bound_ + 1e-15)
                throw PoleError("mgf: |s| outside the moment series convergence bound");
            Complex acc(0.0, 0.0);
            for (auto it = moments_.rbegin(); it != moments_.rend(); ++it) acc = acc * s + *it;
            return acc;
        }
    }
    throw InvalidInput("mgf: unknown model kind");
}

Complex OperatorModel::mgf_prime(Complex s) const {
    switch (kind_) {
        case Kind::Cyclic: {
            const Complex d = Complex(1.0, 0.0) - pow_int(s, m_);
            if (std::abs(d) < kPoleTol) throw PoleError("mgf_prime: s^m = 1 for cyclic model");
            return static_cast<double>(m_) * pow_int(s, m_ - 1) / (d * d);
        }
        case Kind::ArcsineShift: {
            const Complex w = Complex(1.0, 0.0) - 4.0 * s * s;
            if (std::abs(w) < kPoleTol ||
                (w.real() < 0.0 && std::abs(w.imag()) < kPoleTol * (1.0 + std::abs(w))))
                throw PoleError("mgf_prime: 1-4s^2 on the branch cut");
            const Complex r = std::sqrt(w);
            return 4.0 * s / (w * r);
        }
        case Kind::Rotated:
            return phase_ * base_->mgf_prime(phase_ * s);
        case Kind::MomentSeries: {
            if (std::abs(s) > 0.5 / norm_bound_ + 1e-15)
                throw PoleError("mgf_prime: |s| outside the moment series convergence bound");
            Complex acc(0.0, 0.0);
            for (size_t k = moments_.size(); k-- > 1;)
                acc = acc * s + static_cast<double>(k) * moments_[k];
            return acc;
        }
    }
    throw InvalidInput("mgf_prime: unknown model kind");
}

double OperatorModel::resolvent_l2_sq(Complex s) const {
    switch (kind_) {
        case Kind::Cyclic: {
            const Complex d = Complex(1.0, 0.0) - pow_int(s, m_);
            if (std::abs(d) < kPoleTol) throw PoleError("resolvent_l2_sq: s^m = 1");
            const double a2 = std::norm(s);
            double num = 1.0, p = 1.0;
            for (int j = 1; j < m_; ++j) {
                p *= a2;
                num += p;
            }
            return num / std::norm(d);
        }
        case Kind::Rotated:
            return base_->resolvent_l2_sq(phase_ * s);
        case Kind::ArcsineShift:
        case Kind::MomentSeries: {
            // self-adjoint operator: the norm follows from the spectral measure
            if (std::abs(s.imag()) < 1e-8) {
                const Complex sr(s.real(), 0.0);
                const Complex v = mgf(sr) + sr * mgf_prime(sr);
                return v.real();
            }
            const Complex sc = std::conj(s);
            const Complex v = (sc * mgf(sc) - s * mgf(s)) / (sc - s);
            return v.real();
        }
    }
    throw InvalidInput("resolvent_l2_sq: unknown model kind");
}

double OperatorModel::x_value(Complex s) const {
    const Complex f = mgf(s);
    const double f2 = std::norm(f);
    if (f2 < 1e-280) throw DegenerateError("x_value: f(s) = 0");
    const double x = resolvent_l2_sq(s) / f2 - 1.0;
    return x < 0.0 ? 0.0 : x;
}

std::string OperatorModel::to_string() const {
    switch (kind_) {
        case Kind::Cyclic:
            return "cyclic:" + std::to_string(m_);
        case Kind::ArcsineShift:
            return "arcsine";
        case Kind::Rotated:
            return "rot:" + fmt_double(phase_.real()) + "," + fmt_double(phase_.imag()) + ":(" +
                   base_->to_string() + ")";
        case Kind::MomentSeries: {
            std::string out = "series:[";
            for (size_t k = 0; k < moments_.size(); ++k) {
                if (k) out += ",";
                out += fmt_double(moments_[k].real());
                if (moments_[k].imag() != 0.0) out += "+" + fmt_double(moments_[k].imag()) + "i";
            }
            out += "]:" + fmt_double(norm_bound_);
            return out;
        }
    }
    return "?";
}

double FreeSumModel::norm_bound() const {
    double b = 0.0;
    for (const auto& m : summands) b += m.norm_bound();
    return b;
}

std::string FreeSumModel::to_string() const {
    std::string out;
    for (size_t k = 0; k < summands.size(); ++k) {
        if (k) out += "+";
        out += summands[k].to_string();
    }
    return out;
}

namespace {

std::vector<std::string> split_top_level(const std::string& text, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : text) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

double parse_number(const std::string& text) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw InvalidInput("model grammar: bad number '" + text + "'");
    }
    if (pos != text.size()) throw InvalidInput("model grammar: bad number '" + text + "'");
    return v;
}

// Accepts "a", "a+bi", "a-bi" (no spaces).
Complex parse_complex_entry(const std::string& text) {
    if (!text.empty() && text.back() == 'i') {
        size_t split = std::string::npos;
        for (size_t k = text.size() - 1; k > 0; --k) {
            if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        if (split == std::string::npos)
            return Complex(0.0, parse_number(text.substr(0, text.size() - 1)));
        const double re = parse_number(text.substr(0, split));
        std::string imtext = text.substr(split, text.size() - split - 1);
        if (imtext == "+" || imtext == "-") imtext += "1";
        return Complex(re, parse_number(imtext));
    }
    return Complex(parse_number(text), 0.0);
}

OperatorModel parse_summand(const std::string& text) {
    if (text == "arcsine") return OperatorModel::arcsine();
    if (text.rfind("cyclic:", 0) == 0) {
        const std::string rest = text.substr(7);
        const double m = parse_number(rest);
        if (m != std::floor(m) || m < 2)
            throw InvalidInput("model grammar: cyclic order must be an integer >= 2");
        return OperatorModel::cyclic(static_cast<int>(m));
    }
    if (text.rfind("rot:", 0) == 0) {
        const auto fields = split_top_level(text.substr(4), ':');
        if (fields.size() != 2) throw InvalidInput("model grammar: rot:<re>,<im>:(<model>)");
        const auto reim = split_top_level(fields[0], ',');
        if (reim.size() != 2) throw InvalidInput("model grammar: rot phase needs <re>,<im>");
        const std::string& inner = fields[1];
        if (inner.size() < 2 || inner.front() != '(' || inner.back() != ')')
            throw InvalidInput("model grammar: rot base must be parenthesized");
        return OperatorModel::rotated(parse_summand(inner.substr(1, inner.size() - 2)),
                                      Complex(parse_number(reim[0]), parse_number(reim[1])));
    }
    if (text.rfind("series:", 0) == 0) {
        const auto fields = split_top_level(text.substr(7), ':');
        if (fields.size() != 2) throw InvalidInput("model grammar: series:[...]:<bound>");
        const std::string& list = fields[0];
        if (list.size() < 2 || list.front() != '[' || list.back() != ']')
            throw InvalidInput("model grammar: series moments must be bracketed");
        std::vector<Complex> moments;
        for (const auto& entry : split_top_level(list.substr(1, list.size() - 2), ','))
            moments.push_back(parse_complex_entry(entry));
        return OperatorModel::moment_series(std::move(moments), parse_number(fields[1]));
    }
    throw InvalidInput("model grammar: unknown summand '" + text + "'");
}

}  // namespace

FreeSumModel parse_model(const std::string& text) {
    if (text.empty()) throw InvalidInput("model grammar: empty model string");
    FreeSumModel model;
    for (const auto& part : split_top_level(text, '+')) model.summands.push_back(parse_summand(part));
    return model;
}

}  // namespace freespectra::dist
