#include "chartab/io.hpp"

#include <fstream>
#include <sstream>

namespace chartab {

namespace {

class LineReader {
public:
    LineReader(std::istream& is, std::string filename) : is_(is), file_(std::move(filename)) {}

    // next nonempty, non-comment line split into tokens
    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(is_, line)) {
            ++lineno_;
            size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            tokens.clear();
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(file_ + ":" + std::to_string(lineno_) + ": " + msg);
    }

private:
    std::istream& is_;
    std::string file_;
    int lineno_ = 0;
};

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string unquote(const std::string& s, LineReader& r) {
    if (s.size() < 2 || s.front() != '"' || s.back() != '"')
        r.fail("expected a quoted identifier, got " + s);
    return s.substr(1, s.size() - 2);
}

Int parse_int(const std::string& s, LineReader& r) {
    try {
        return Int(s);
    } catch (...) {
        r.fail("expected an integer, got " + s);
    }
}

// map entries: 7 or [2,3]
MapEntry parse_entry(const std::string& s, LineReader& r, int limit) {
    auto check = [&](int v) {
        if (v < 1 || v > limit) r.fail("class index " + std::to_string(v) + " out of range");
        return v;
    };
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']') r.fail("malformed candidate list " + s);
        std::vector<int> cands;
        std::string body = s.substr(1, s.size() - 2);
        std::istringstream bs(body);
        std::string item;
        while (std::getline(bs, item, ',')) {
            if (item.empty()) r.fail("malformed candidate list " + s);
            cands.push_back(check(std::stoi(item)));
        }
        if (cands.size() < 2) r.fail("candidate lists need at least two entries: " + s);
        std::vector<int> sorted = cands;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        if (sorted != cands) r.fail("candidate list not sorted and duplicate-free: " + s);
        return MapEntry(cands);
    }
    try {
        return MapEntry(check(std::stoi(s)));
    } catch (const Error&) {
        throw;
    } catch (...) {
        r.fail("expected a map entry, got " + s);
    }
}

std::string entry_to_token(const MapEntry& e) {
    if (e.determined()) return std::to_string(e.value());
    std::string s = "[";
    for (size_t i = 0; i < e.candidates().size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e.candidates()[i]);
    }
    return s + "]";
}

std::vector<long> parse_orders_entry(const std::string& s, LineReader& r) {
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']') r.fail("malformed order list " + s);
        std::vector<long> out;
        std::string body = s.substr(1, s.size() - 2);
        std::istringstream bs(body);
        std::string item;
        while (std::getline(bs, item, ',')) out.push_back(std::stol(item));
        if (out.size() < 2) r.fail("order candidate lists need two entries: " + s);
        return out;
    }
    return {std::stol(s)};
}

std::string orders_entry_to_token(const std::vector<long>& cand) {
    if (cand.size() == 1) return std::to_string(cand[0]);
    std::string s = "[";
    for (size_t i = 0; i < cand.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(cand[i]);
    }
    return s + "]";
}

}  // namespace

std::string cyclotomic_to_token(const Cyclotomic& x) {
    if (x.is_rational()) {
        return x.is_zero() ? "0" : x.rational_value().get_str();
    }
    std::string s = "{" + std::to_string(x.conductor()) + ",[";
    bool first = true;
    for (auto& [e, c] : x.coefficients()) {
        if (!first) s += ",";
        s += "(" + std::to_string(e) + "," + c.get_num().get_str() + "," +
             c.get_den().get_str() + ")";
        first = false;
    }
    return s + "]}";
}

Cyclotomic cyclotomic_from_token(const std::string& token) {
    if (token.empty()) throw Error("empty cyclotomic token");
    if (token[0] != '{') {
        // bare rational: num or num/den
        size_t slash = token.find('/');
        Rat q;
        if (slash == std::string::npos) {
            q = Rat(Int(token));
        } else {
            q = Rat(Int(token.substr(0, slash)), Int(token.substr(slash + 1)));
        }
        q.canonicalize();
        return Cyclotomic(q);
    }
    // {n,[(e,num,den),...]}
    std::string s = token;
    auto malformed = [&]() -> std::runtime_error {
        return Error("malformed cyclotomic token " + token);
    };
    if (s.back() != '}') throw malformed();
    s = s.substr(1, s.size() - 2);
    size_t comma = s.find(',');
    if (comma == std::string::npos) throw malformed();
    long n = std::stol(s.substr(0, comma));
    std::string body = s.substr(comma + 1);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') throw malformed();
    body = body.substr(1, body.size() - 2);
    Cyclotomic acc(0);
    std::vector<std::pair<long, Rat>> raw;
    size_t pos = 0;
    while (pos < body.size()) {
        if (body[pos] == ',') ++pos;
        if (pos >= body.size()) break;
        if (body[pos] != '(') throw malformed();
        size_t close = body.find(')', pos);
        if (close == std::string::npos) throw malformed();
        std::string item = body.substr(pos + 1, close - pos - 1);
        pos = close + 1;
        std::istringstream is(item);
        std::string e, num, den;
        if (!std::getline(is, e, ',') || !std::getline(is, num, ',') || !std::getline(is, den))
            throw malformed();
        Int n_part(num), d_part(den);
        if (d_part <= 0 || gcd(abs(n_part), d_part) != 1)
            throw Error("non-canonical cyclotomic encoding " + token);
        Rat q{n_part, d_part};
        q.canonicalize();
        raw.emplace_back(std::stol(e), q);
    }
    // rebuild through the arithmetic layer and demand canonical input
    for (auto& [e, c] : raw) acc += Cyclotomic(c) * Cyclotomic::root_of_unity(n, e);
    if (acc.conductor() != n) throw Error("non-canonical cyclotomic encoding " + token);
    if (acc.coefficients() != raw) throw Error("non-canonical cyclotomic encoding " + token);
    return acc;
}

void save_table(const CharacterTable& tbl, std::ostream& os) {
    os << "table " << quote(tbl.identifier()) << "\n";
    os << "classes " << tbl.num_classes() << "\n";
    os << "order " << tbl.group_order().get_str() << "\n";
    os << "orders";
    for (int i = 1; i <= tbl.num_classes(); ++i)
        os << " " << orders_entry_to_token(tbl.order_candidates(i));
    os << "\n";
    os << "centralizers";
    for (int i = 1; i <= tbl.num_classes(); ++i) os << " " << tbl.centralizer(i).get_str();
    os << "\n";
    for (auto& [p, m] : tbl.power_maps()) {
        os << "powermap " << p;
        for (int i = 1; i <= m.size(); ++i) os << " " << entry_to_token(m.at(i));
        os << "\n";
    }
    for (auto& [target, m] : tbl.fusions()) {
        os << "fusion " << quote(target);
        for (int i = 1; i <= m.size(); ++i) os << " " << entry_to_token(m.at(i));
        os << "\n";
    }
    if (tbl.has_irreducibles()) {
        for (auto& chi : tbl.irreducibles()) {
            os << "irreducible";
            for (int i = 1; i <= tbl.num_classes(); ++i)
                os << " " << cyclotomic_to_token(chi.at(i));
            os << "\n";
        }
    }
    os << "end\n";
}

void save_table_file(const CharacterTable& tbl, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path);
    save_table(tbl, os);
}

CharacterTable load_table(std::istream& is, const std::string& filename) {
    LineReader r(is, filename);
    std::vector<std::string> tok;
    if (!r.next(tok) || tok[0] != "table" || tok.size() != 2) r.fail("expected: table \"id\"");
    std::string identifier = unquote(tok[1], r);
    if (!r.next(tok) || tok[0] != "classes" || tok.size() != 2) r.fail("expected: classes n");
    int n = std::stoi(tok[1]);
    if (n <= 0) r.fail("class count must be positive");
    if (!r.next(tok) || tok[0] != "order" || tok.size() != 2) r.fail("expected: order N");
    Int group_order = parse_int(tok[1], r);
    if (!r.next(tok) || tok[0] != "orders" || static_cast<int>(tok.size()) != n + 1)
        r.fail("expected: orders with one entry per class");
    std::vector<std::vector<long>> orders;
    for (int i = 1; i <= n; ++i) orders.push_back(parse_orders_entry(tok[i], r));
    if (!r.next(tok) || tok[0] != "centralizers" || static_cast<int>(tok.size()) != n + 1)
        r.fail("expected: centralizers with one entry per class");
    std::vector<Int> cents;
    for (int i = 1; i <= n; ++i) cents.push_back(parse_int(tok[i], r));

    CharacterTable tbl;
    try {
        tbl = CharacterTable::build(identifier, std::move(orders), std::move(cents), group_order);
    } catch (const Error& e) {
        r.fail(e.what());
    }
    std::vector<ClassFunction> irreducibles;
    while (r.next(tok)) {
        if (tok[0] == "end") {
            if (!irreducibles.empty()) {
                if (static_cast<int>(irreducibles.size()) != n)
                    r.fail("expected " + std::to_string(n) + " irreducibles, got " +
                           std::to_string(irreducibles.size()));
                tbl.set_irreducibles(std::move(irreducibles));
            }
            return tbl;
        }
        if (tok[0] == "powermap") {
            if (static_cast<int>(tok.size()) != n + 2) r.fail("powermap needs p and n entries");
            long p = std::stol(tok[1]);
            std::vector<MapEntry> entries;
            for (int i = 2; i < static_cast<int>(tok.size()); ++i)
                entries.push_back(parse_entry(tok[i], r, n));
            tbl.set_power_map(p, ParamMap(std::move(entries)));
        } else if (tok[0] == "fusion") {
            if (static_cast<int>(tok.size()) != n + 2)
                r.fail("fusion needs a target and n entries");
            std::string target = unquote(tok[1], r);
            std::vector<MapEntry> entries;
            for (int i = 2; i < static_cast<int>(tok.size()); ++i)
                entries.push_back(parse_entry(tok[i], r, 100000));
            tbl.store_fusion(target, ParamMap(std::move(entries)));
        } else if (tok[0] == "irreducible") {
            if (static_cast<int>(tok.size()) != n + 1)
                r.fail("irreducible rows need one value per class");
            ClassFunction chi(n);
            for (int i = 1; i <= n; ++i) {
                try {
                    chi.at(i) = cyclotomic_from_token(tok[i]);
                } catch (const Error& e) {
                    r.fail(e.what());
                }
            }
            irreducibles.push_back(std::move(chi));
        } else {
            r.fail("unknown directive " + tok[0]);
        }
    }
    r.fail("missing end");
}

CharacterTable load_table_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot read " + path);
    return load_table(is, path);
}

void save_characters(const CharacterSet& set, std::ostream& os) {
    size_t n = set.characters.empty() ? 0 : set.characters[0].size();
    os << "chars " << quote(set.table_identifier) << " " << n << "\n";
    for (auto& chi : set.characters) {
        os << "char";
        for (int i = 1; i <= chi.size(); ++i) os << " " << cyclotomic_to_token(chi.at(i));
        os << "\n";
    }
    os << "end\n";
}

CharacterSet load_characters(std::istream& is, const std::string& filename) {
    LineReader r(is, filename);
    std::vector<std::string> tok;
    if (!r.next(tok) || tok[0] != "chars" || tok.size() != 3) r.fail("expected: chars \"id\" n");
    CharacterSet set;
    set.table_identifier = unquote(tok[1], r);
    int n = std::stoi(tok[2]);
    while (r.next(tok)) {
        if (tok[0] == "end") return set;
        if (tok[0] != "char" || static_cast<int>(tok.size()) != n + 1)
            r.fail("expected: char with one value per class");
        ClassFunction chi(n);
        for (int i = 1; i <= n; ++i) {
            try {
                chi.at(i) = cyclotomic_from_token(tok[i]);
            } catch (const Error& e) {
                r.fail(e.what());
            }
        }
        set.characters.push_back(std::move(chi));
    }
    r.fail("missing end");
}

void save_characters_file(const CharacterSet& set, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path);
    save_characters(set, os);
}

CharacterSet load_characters_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot read " + path);
    return load_characters(is, path);
}

}  // namespace chartab
