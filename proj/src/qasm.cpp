#include "gateimpact/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace gateimpact {

std::string ParseDiagnostic::to_string() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

namespace {

constexpr int kMaxRegisterSize = 1 << 16;
constexpr int kMaxExprDepth = 128;
constexpr std::size_t kMaxDiagnostics = 64;

enum class Tok { Ident, Number, String, Symbol, SxdgMarker, End, Bad };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double value = 0.0;
    bool integral = false;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                t.kind = Tok::End;
                out.push_back(t);
                return out;
            }
            const char c = src_[pos_];
            if (c == '/' && peek(1) == '/') {
                std::size_t end = src_.find('\n', pos_);
                if (end == std::string_view::npos) end = src_.size();
                std::string_view body = src_.substr(pos_ + 2, end - pos_ - 2);
                advance(end - pos_);
                if (trim(body) == "@sxdg") {
                    t.kind = Tok::SxdgMarker;
                    out.push_back(t);
                }
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos_;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    advance(1);
                }
                t.kind = Tok::Ident;
                t.text = std::string(src_.substr(start, pos_ - start));
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
                lex_number(t);
            } else if (c == '"') {
                std::size_t end = src_.find('"', pos_ + 1);
                std::size_t nl = src_.find('\n', pos_ + 1);
                if (end == std::string_view::npos || (nl != std::string_view::npos && nl < end)) {
                    t.kind = Tok::Bad;
                    t.text = "unterminated string";
                    advance(1);
                } else {
                    t.kind = Tok::String;
                    t.text = std::string(src_.substr(pos_ + 1, end - pos_ - 1));
                    advance(end + 1 - pos_);
                }
            } else if (c == '-' && peek(1) == '>') {
                t.kind = Tok::Symbol;
                t.text = "->";
                advance(2);
            } else if (std::string_view(";,[]()+-*/").find(c) != std::string_view::npos) {
                t.kind = Tok::Symbol;
                t.text = std::string(1, c);
                advance(1);
            } else {
                t.kind = Tok::Bad;
                t.text = "unexpected character";
                advance(1);
            }
            out.push_back(std::move(t));
        }
    }

private:
    static std::string_view trim(std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    }

    char peek(std::size_t ahead) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance(1);
    }

    void lex_number(Token& t) {
        std::size_t start = pos_;
        bool integral = true;
        while (std::isdigit(static_cast<unsigned char>(peek(0)))) advance(1);
        if (peek(0) == '.') {
            integral = false;
            advance(1);
            while (std::isdigit(static_cast<unsigned char>(peek(0)))) advance(1);
        }
        if (peek(0) == 'e' || peek(0) == 'E') {
            std::size_t k = 1;
            if (peek(k) == '+' || peek(k) == '-') ++k;
            if (std::isdigit(static_cast<unsigned char>(peek(k)))) {
                integral = false;
                advance(k);
                while (std::isdigit(static_cast<unsigned char>(peek(0)))) advance(1);
            }
        }
        t.kind = Tok::Number;
        t.text = std::string(src_.substr(start, pos_ - start));
        t.value = std::strtod(t.text.c_str(), nullptr);
        t.integral = integral;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct SyntaxError {
    int line;
    int column;
    std::string message;
};

struct Register {
    std::string name;
    int size = 0;
    bool declared = false;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ParseResult run() {
        ParseResult result;
        bool header_seen = false;
        while (cur().kind != Tok::End && diags_.size() < kMaxDiagnostics) {
            const std::size_t stmt_start = i_;
            try {
                if (!header_seen) {
                    parse_header();
                    header_seen = true;
                } else {
                    parse_statement();
                }
                check_marker();
            } catch (const SyntaxError& e) {
                diags_.push_back({e.line, e.column, e.message});
                if (!header_seen) {
                    result.diagnostics = std::move(diags_);
                    return result;
                }
                recover(stmt_start);
            }
        }
        if (!header_seen && diags_.empty()) {
            diags_.push_back({cur().line, cur().column, "expected 'OPENQASM 2.0;' header"});
        }
        if (marker_pending_) {
            diags_.push_back({marker_line_, marker_col_, "incomplete @sxdg sequence"});
        }
        if (header_seen && !qreg_.declared && diags_.empty()) {
            diags_.push_back({cur().line, cur().column, "missing qreg declaration"});
        }
        if (diags_.empty()) {
            Circuit c(qreg_.size, creg_.declared ? creg_.size : 0);
            c.ops = std::move(ops_);
            for (const auto& v : validate(c)) {
                if (v.op_index < op_pos_.size()) {
                    const auto& [l, col] = op_pos_[v.op_index];
                    diags_.push_back({l, col, v.message});
                } else {
                    diags_.push_back({1, 1, v.message});
                }
            }
            if (diags_.empty()) result.circuit = std::move(c);
        }
        result.diagnostics = std::move(diags_);
        return result;
    }

private:
    const Token& cur() const { return toks_[i_]; }

    [[noreturn]] void fail(const Token& at, std::string msg) const {
        throw SyntaxError{at.line, at.column, std::move(msg)};
    }

    bool is_symbol(std::string_view s) const {
        return cur().kind == Tok::Symbol && cur().text == s;
    }

    void expect_symbol(std::string_view s) {
        if (!is_symbol(s)) fail(cur(), "expected '" + std::string(s) + "'" + found());
        ++i_;
    }

    std::string found() const {
        switch (cur().kind) {
            case Tok::End: return ", found end of input";
            case Tok::Bad: return ", found " + cur().text;
            case Tok::SxdgMarker: return ", found @sxdg marker";
            default: return ", found '" + cur().text + "'";
        }
    }

    std::string expect_ident() {
        if (cur().kind != Tok::Ident) fail(cur(), "expected identifier" + found());
        return toks_[i_++].text;
    }

    int expect_index() {
        const Token& t = cur();
        if (t.kind != Tok::Number || !t.integral) fail(t, "expected non-negative integer" + found());
        if (t.text.size() > 9 || t.value > static_cast<double>(kMaxRegisterSize)) {
            fail(t, "integer too large");
        }
        ++i_;
        return static_cast<int>(t.value);
    }

    void recover(std::size_t stmt_start) {
        if (i_ == stmt_start && cur().kind != Tok::End) ++i_;
        while (cur().kind != Tok::End && !is_symbol(";")) ++i_;
        if (is_symbol(";")) ++i_;
    }

    void parse_header() {
        const Token& t = cur();
        if (t.kind != Tok::Ident || t.text != "OPENQASM") fail(t, "expected 'OPENQASM 2.0;' header");
        ++i_;
        if (cur().kind != Tok::Number || cur().text.rfind("2", 0) != 0 || cur().value != 2.0) {
            fail(cur(), "unsupported OpenQASM version (only 2.0)");
        }
        ++i_;
        expect_symbol(";");
    }

    void parse_statement() {
        const Token& head = cur();
        if (head.kind == Tok::SxdgMarker) {
            if (marker_pending_) fail(head, "nested @sxdg marker");
            marker_pending_ = true;
            marker_start_ = ops_.size();
            marker_line_ = head.line;
            marker_col_ = head.column;
            ++i_;
            return;
        }
        if (head.kind != Tok::Ident) fail(head, "expected statement" + found());
        const std::string& word = head.text;
        if (word == "include") {
            ++i_;
            if (cur().kind != Tok::String || cur().text != "qelib1.inc") {
                fail(cur(), "only 'include \"qelib1.inc\";' is supported");
            }
            ++i_;
            expect_symbol(";");
        } else if (word == "qreg" || word == "creg") {
            parse_register(word == "qreg" ? qreg_ : creg_, word);
        } else if (word == "barrier") {
            ++i_;
            auto qs = parse_qubit_list(head, true);
            expect_symbol(";");
            push(GateOp::barrier(std::move(qs)), head);
        } else if (word == "measure") {
            parse_measure();
        } else if (word == "rz" || word == "sx" || word == "sxdg" || word == "x" || word == "cx") {
            parse_gate();
        } else {
            if (peek_is_call()) fail(head, "unsupported gate '" + word + "'");
            fail(head, "unsupported statement '" + word + "'");
        }
    }

    bool peek_is_call() const {
        const Token& next = toks_[std::min(i_ + 1, toks_.size() - 1)];
        return next.kind == Tok::Ident || (next.kind == Tok::Symbol && next.text == "(");
    }

    void parse_register(Register& reg, const std::string& word) {
        const Token& head = cur();
        ++i_;
        if (reg.declared) fail(head, "only one " + word + " declaration is supported");
        std::string name = expect_ident();
        expect_symbol("[");
        const Token& size_tok = cur();
        int size = expect_index();
        expect_symbol("]");
        expect_symbol(";");
        if (word == "qreg" && size < 1) fail(size_tok, "qreg size must be positive");
        const Register& other = word == "qreg" ? creg_ : qreg_;
        if (other.declared && other.name == name) fail(head, "register name '" + name + "' already used");
        reg = {std::move(name), size, true};
    }

    int parse_bit(const Register& reg, const char* what) {
        const Token& name_tok = cur();
        std::string name = expect_ident();
        if (!reg.declared) fail(name_tok, std::string("no ") + what + " declared");
        if (name != reg.name) fail(name_tok, "unknown register '" + name + "'");
        expect_symbol("[");
        const Token& idx_tok = cur();
        int idx = expect_index();
        expect_symbol("]");
        if (idx >= reg.size) fail(idx_tok, "index " + std::to_string(idx) + " out of range for '" + name + "'");
        return idx;
    }

    std::vector<Qubit> parse_qubit_list(const Token& head, bool allow_whole) {
        std::vector<Qubit> qs;
        do {
            if (!qs.empty()) ++i_;  // ','
            if (allow_whole && cur().kind == Tok::Ident && toks_[i_ + 1].kind == Tok::Symbol &&
                toks_[i_ + 1].text != "[") {
                const Token& name_tok = cur();
                std::string name = expect_ident();
                if (!qreg_.declared) fail(name_tok, "no qreg declared");
                if (name != qreg_.name) fail(name_tok, "unknown register '" + name + "'");
                for (Qubit q = 0; q < qreg_.size; ++q) qs.push_back(q);
            } else {
                qs.push_back(parse_bit(qreg_, "qreg"));
            }
        } while (is_symbol(","));
        if (qs.empty()) fail(head, "missing qubit arguments");
        return qs;
    }

    void parse_measure() {
        const Token& head = cur();
        ++i_;
        const bool whole = cur().kind == Tok::Ident && toks_[i_ + 1].kind == Tok::Symbol && toks_[i_ + 1].text == "->";
        if (whole) {
            const Token& qtok = cur();
            std::string qname = expect_ident();
            if (!qreg_.declared || qname != qreg_.name) fail(qtok, "unknown register '" + qname + "'");
            expect_symbol("->");
            const Token& ctok = cur();
            std::string cname = expect_ident();
            if (!creg_.declared || cname != creg_.name) fail(ctok, "unknown register '" + cname + "'");
            expect_symbol(";");
            if (creg_.size < qreg_.size) fail(ctok, "classical register smaller than quantum register");
            for (Qubit q = 0; q < qreg_.size; ++q) push(GateOp::measure(q, q), head);
            return;
        }
        Qubit q = parse_bit(qreg_, "qreg");
        expect_symbol("->");
        int c = parse_bit(creg_, "creg");
        expect_symbol(";");
        push(GateOp::measure(q, c), head);
    }

    void parse_gate() {
        const Token& head = cur();
        const std::string name = head.text;
        ++i_;
        double angle = 0.0;
        if (name == "rz") {
            expect_symbol("(");
            const Token& expr_tok = cur();
            angle = parse_expr(0);
            expect_symbol(")");
            if (!std::isfinite(angle)) fail(expr_tok, "angle expression is not finite");
        } else if (is_symbol("(")) {
            fail(cur(), "gate '" + name + "' takes no parameters");
        }
        auto qs = parse_qubit_list(head, false);
        expect_symbol(";");
        const std::size_t want = name == "cx" ? 2 : 1;
        if (qs.size() != want) {
            fail(head, "gate '" + name + "' expects " + std::to_string(want) + " qubit argument(s)");
        }
        if (name == "rz") push(GateOp::rz(qs[0], angle), head);
        else if (name == "sx") push(GateOp::sx(qs[0]), head);
        else if (name == "sxdg") push(GateOp::sx(qs[0], true), head);
        else if (name == "x") push(GateOp::x(qs[0]), head);
        else push(GateOp::cx(qs[0], qs[1]), head);
    }

    double parse_expr(int depth) {
        if (depth > kMaxExprDepth) fail(cur(), "expression nested too deeply");
        double v = parse_term(depth + 1);
        while (is_symbol("+") || is_symbol("-")) {
            const bool plus = cur().text == "+";
            ++i_;
            double rhs = parse_term(depth + 1);
            v = plus ? v + rhs : v - rhs;
        }
        return v;
    }

    double parse_term(int depth) {
        double v = parse_unary(depth + 1);
        while (is_symbol("*") || is_symbol("/")) {
            const bool mul = cur().text == "*";
            ++i_;
            double rhs = parse_unary(depth + 1);
            v = mul ? v * rhs : v / rhs;
        }
        return v;
    }

    double parse_unary(int depth) {
        if (depth > kMaxExprDepth) fail(cur(), "expression nested too deeply");
        if (is_symbol("-")) {
            ++i_;
            return -parse_unary(depth + 1);
        }
        if (is_symbol("+")) {
            ++i_;
            return parse_unary(depth + 1);
        }
        const Token& t = cur();
        if (t.kind == Tok::Number) {
            ++i_;
            return t.value;
        }
        if (t.kind == Tok::Ident && t.text == "pi") {
            ++i_;
            return std::numbers::pi;
        }
        if (is_symbol("(")) {
            ++i_;
            double v = parse_expr(depth + 1);
            expect_symbol(")");
            return v;
        }
        fail(t, "expected angle expression" + found());
    }

    void push(GateOp op, const Token& at) {
        ops_.push_back(std::move(op));
        op_pos_.emplace_back(at.line, at.column);
    }

    void check_marker() {
        if (!marker_pending_ || ops_.size() < marker_start_ + 3) return;
        marker_pending_ = false;
        const GateOp& a = ops_[marker_start_];
        const GateOp& b = ops_[marker_start_ + 1];
        const GateOp& c = ops_[marker_start_ + 2];
        auto is_rz_pi = [](const GateOp& op) {
            return op.kind == GateKind::RZ && std::abs(op.angle - std::numbers::pi) <= 1e-12;
        };
        const bool ok = ops_.size() == marker_start_ + 3 && is_rz_pi(a) && is_rz_pi(c) &&
                        b.kind == GateKind::SX && !b.adjoint && a.qubits == b.qubits && b.qubits == c.qubits;
        if (!ok) {
            diags_.push_back({marker_line_, marker_col_, "@sxdg marker must precede rz(pi); sx; rz(pi) on one qubit"});
            return;
        }
        const Qubit q = b.qubits[0];
        const auto pos = op_pos_[marker_start_];
        ops_.resize(marker_start_);
        op_pos_.resize(marker_start_);
        ops_.push_back(GateOp::sx(q, true));
        op_pos_.push_back(pos);
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    std::vector<ParseDiagnostic> diags_;
    Register qreg_;
    Register creg_;
    std::vector<GateOp> ops_;
    std::vector<std::pair<int, int>> op_pos_;
    bool marker_pending_ = false;
    std::size_t marker_start_ = 0;
    int marker_line_ = 0;
    int marker_col_ = 0;
};

std::string format_angle(double a) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", a);
    return buf;
}

}  // namespace

ParseResult parse_qasm(std::string_view text) {
    Lexer lexer(text);
    Parser parser(lexer.run());
    return parser.run();
}

std::string emit_qasm(const Circuit& circuit, const EmitOptions& options) {
    require_valid(circuit);
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "qreg q[" << circuit.num_qubits << "];\n";
    if (circuit.num_clbits > 0) out << "creg c[" << circuit.num_clbits << "];\n";
    for (const auto& op : circuit.ops) {
        switch (op.kind) {
            case GateKind::RZ:
                out << "rz(" << format_angle(op.angle) << ") q[" << op.qubits[0] << "];\n";
                break;
            case GateKind::SX:
                if (!op.adjoint) {
                    out << "sx q[" << op.qubits[0] << "];\n";
                } else if (options.extended_gates) {
                    out << "sxdg q[" << op.qubits[0] << "];\n";
                } else {
                    const Qubit q = op.qubits[0];
                    out << "// @sxdg\n";
                    out << "rz(pi) q[" << q << "]; sx q[" << q << "]; rz(pi) q[" << q << "];\n";
                }
                break;
            case GateKind::X:
                out << "x q[" << op.qubits[0] << "];\n";
                break;
            case GateKind::CX:
                out << "cx q[" << op.qubits[0] << "],q[" << op.qubits[1] << "];\n";
                break;
            case GateKind::Barrier:
                out << "barrier ";
                for (std::size_t k = 0; k < op.qubits.size(); ++k) {
                    out << (k ? "," : "") << "q[" << op.qubits[k] << "]";
                }
                out << ";\n";
                break;
            case GateKind::Measure:
                out << "measure q[" << op.qubits[0] << "] -> c[" << op.clbit << "];\n";
                break;
        }
    }
    return out.str();
}

}  // namespace gateimpact
