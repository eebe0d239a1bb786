#include "specimeta/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>

namespace specimeta::graph {

namespace {

std::span<const Statement* const> find_in(
    const std::unordered_map<std::string, std::vector<const Statement*>>& idx,
    const std::string& key) {
    auto it = idx.find(key);
    if (it == idx.end()) return {};
    return it->second;
}

void escape_into(std::string& out, std::string_view s) {
    for (char ch : s) {
        unsigned char c = static_cast<unsigned char>(ch);
        switch (ch) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04X", c);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
}

}  // namespace

Graph::Graph(const Graph& other) : reg_(other.reg_) {
    for (const auto& st : other.stmts_) add(st);
}

Graph& Graph::operator=(const Graph& other) {
    if (this != &other) {
        Graph tmp(other);
        *this = std::move(tmp);
    }
    return *this;
}

bool Graph::add(Statement st) {
    reg_->resolve_prefix(st.predicate.prefix);  // throws UnknownPrefix
    auto [it, inserted] = stmts_.insert(std::move(st));
    if (inserted) {
        const Statement* p = &*it;
        subj_idx_[p->subject].push_back(p);
        pred_idx_[reg_->expand(p->predicate)].push_back(p);
    }
    return inserted;
}

std::span<const Statement* const> Graph::by_subject(
    const std::string& s) const {
    return find_in(subj_idx_, s);
}

std::span<const Statement* const> Graph::by_predicate_iri(
    const std::string& p) const {
    return find_in(pred_idx_, p);
}

std::vector<std::string> Graph::subjects() const {
    std::vector<std::string> out;
    for (const auto& [s, _] : subj_idx_) out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

Graph build_entity_graph(std::span<const RecordStatements> records,
                         const std::string& naan,
                         const NamespaceRegistry& reg) {
    Graph g(&reg);

    std::map<std::pair<EntityClass, std::string>,
             const RecordStatements*> seen;
    std::map<std::string, ark::ArkId> multimedia;  // source key -> ark

    for (const auto& rec : records) {
        auto key = std::make_pair(rec.cls, rec.source_key);
        auto it = seen.find(key);
        if (it != seen.end()) {
            if (it->second->pairs != rec.pairs)
                throw DuplicateEntity(rec.cls, rec.source_key);
            continue;
        }
        seen.emplace(key, &rec);
        if (rec.cls == EntityClass::Multimedia)
            multimedia.emplace(
                rec.source_key,
                ark::mint(naan, EntityClass::Multimedia, rec.source_key));
    }

    for (const auto& [key, rec] : seen) {
        auto a = ark::mint(naan, rec->cls, rec->source_key);
        std::string subject = a.iri();
        g.add({subject, rdf_type(), Iri{reg.class_iri(rec->cls)}});
        for (const auto& [term, lit] : rec->pairs)
            g.add({subject, term, lit});

        switch (rec->cls) {
            case EntityClass::CollectionEvent:
            case EntityClass::IQMetadata:
            case EntityClass::ExtendedImageMetadata: {
                auto parent = multimedia.find(rec->source_key);
                if (parent == multimedia.end())
                    throw OrphanChild(rec->source_key);
                g.add({subject, is_part_of(), Iri{parent->second.iri()}});
                break;
            }
            case EntityClass::Batch:
                for (const auto& [_, m] : multimedia)
                    g.add({subject, has_part(), Iri{m.iri()}});
                break;
            case EntityClass::Multimedia:
                break;
        }
    }
    return g;
}

void attach_rights(Graph& g, const ark::ArkId& subject,
                   const std::string& rights_text,
                   const std::string& license_iri) {
    std::string s = subject.iri();
    if (g.by_subject(s).empty()) throw UnknownSubject(subject.render());
    g.add({s, Term{"rdfs", "comment"},
           LiteralValue{rights_text, Datatype::String}});
    g.add({s, Term{"dcterms", "license"}, Iri{license_iri}});
}

std::string render_statement(const Statement& st,
                             const NamespaceRegistry& reg) {
    if (is_blank_node(st.subject))
        throw Error("blank-node subjects are not serializable");
    std::string out = "<" + st.subject + "> <" + reg.expand(st.predicate) +
                      "> ";
    if (const auto* iri = std::get_if<Iri>(&st.object)) {
        out += "<" + iri->value + ">";
    } else {
        const auto& lit = std::get<LiteralValue>(st.object);
        out += '"';
        escape_into(out, lit.lexical);
        out += '"';
        if (lit.datatype != Datatype::String)
            out += "^^<" + datatype_iri(lit.datatype) + ">";
    }
    out += " .";
    return out;
}

std::string serialize(const Graph& g) {
    std::vector<std::string> lines;
    lines.reserve(g.size());
    for (const auto& st : g.statements())
        lines.push_back(render_statement(st, g.registry()));
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

namespace {

struct LineParser {
    std::string_view s;
    std::size_t i = 0;
    std::size_t line_no;

    [[noreturn]] void fail(const std::string& reason) const {
        throw ParseError(line_no, reason);
    }
    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    std::string iri() {
        if (i >= s.size() || s[i] != '<') fail("expected '<'");
        auto end = s.find('>', ++i);
        if (end == std::string_view::npos) fail("unterminated IRI");
        std::string out(s.substr(i, end - i));
        i = end + 1;
        return out;
    }
    std::string quoted() {
        ++i;  // opening quote
        std::string out;
        while (i < s.size()) {
            char c = s[i];
            if (c == '"') {
                ++i;
                return out;
            }
            if (c == '\\') {
                if (i + 1 >= s.size()) fail("dangling escape");
                char e = s[i + 1];
                i += 2;
                switch (e) {
                    case '\\': out += '\\'; break;
                    case '"': out += '"'; break;
                    case 'n': out += '\n'; break;
                    case 'r': out += '\r'; break;
                    case 't': out += '\t'; break;
                    case 'u': {
                        if (i + 4 > s.size()) fail("short \\u escape");
                        unsigned v = 0;
                        for (int k = 0; k < 4; ++k) {
                            char h = s[i + k];
                            v <<= 4;
                            if (h >= '0' && h <= '9') v |= h - '0';
                            else if (h >= 'A' && h <= 'F') v |= h - 'A' + 10;
                            else if (h >= 'a' && h <= 'f') v |= h - 'a' + 10;
                            else fail("bad \\u escape");
                        }
                        i += 4;
                        // Only the control-character range is emitted by
                        // the serializer; reject anything wider.
                        if (v > 0xFF) fail("\\u escape out of range");
                        out += static_cast<char>(v);
                        break;
                    }
                    default: fail("unknown escape");
                }
            } else {
                out += c;
                ++i;
            }
        }
        fail("unterminated string literal");
    }
};

}  // namespace

Graph parse_serialized(std::string_view bytes, const NamespaceRegistry& reg) {
    Graph g(&reg);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        auto nl = bytes.find('\n', pos);
        std::string_view line = bytes.substr(
            pos, nl == std::string_view::npos ? std::string_view::npos
                                              : nl - pos);
        pos = nl == std::string_view::npos ? bytes.size() : nl + 1;
        ++line_no;
        if (line.empty()) continue;

        LineParser p{line, 0, line_no};
        p.skip_ws();
        std::string subject = p.iri();
        p.skip_ws();
        std::string pred_iri = p.iri();
        p.skip_ws();

        Object obj;
        if (p.i < p.s.size() && p.s[p.i] == '<') {
            obj = Iri{p.iri()};
        } else if (p.i < p.s.size() && p.s[p.i] == '"') {
            std::string lexical = p.quoted();
            Datatype dt = Datatype::String;
            if (p.s.substr(p.i).starts_with("^^")) {
                p.i += 2;
                std::string dt_iri = p.iri();
                auto parsed = datatype_from_iri(dt_iri);
                if (!parsed) p.fail("unknown datatype IRI: " + dt_iri);
                dt = *parsed;
            }
            if (!lexical_valid(lexical, dt))
                p.fail("invalid lexical form for " +
                       std::string(datatype_name(dt)));
            obj = LiteralValue{std::move(lexical), dt};
        } else {
            p.fail("expected IRI or literal object");
        }
        p.skip_ws();
        if (p.i >= p.s.size() || p.s[p.i] != '.') p.fail("expected '.'");
        ++p.i;
        p.skip_ws();
        if (p.i != p.s.size()) p.fail("trailing content after '.'");

        Term pred;
        try {
            pred = reg.compact(pred_iri);
        } catch (const UncompactableIri&) {
            throw ParseError(line_no,
                             "predicate under unregistered namespace: " +
                                 pred_iri);
        }
        g.add({std::move(subject), std::move(pred), std::move(obj)});
    }
    return g;
}

// ---- queries ----

std::string render_bound(const BoundValue& v) {
    if (const auto* iri = std::get_if<Iri>(&v)) return "<" + iri->value + ">";
    const auto& lit = std::get<LiteralValue>(v);
    std::string out = "\"";
    escape_into(out, lit.lexical);
    out += '"';
    if (lit.datatype != Datatype::String)
        out += "^^<" + datatype_iri(lit.datatype) + ">";
    return out;
}

namespace {

BoundValue statement_slot(const Statement& st, int slot,
                          const NamespaceRegistry& reg) {
    switch (slot) {
        case 0: return Iri{st.subject};
        case 1: return Iri{reg.expand(st.predicate)};
        default:
            if (const auto* iri = std::get_if<Iri>(&st.object)) return *iri;
            return std::get<LiteralValue>(st.object);
    }
}

// nullopt = variable (name in var_out); otherwise the resolved constant
std::optional<BoundValue> resolve_slot(const PatternSlot& slot,
                                       const NamespaceRegistry& reg,
                                       std::string& var_out) {
    if (const auto* v = std::get_if<Var>(&slot)) {
        var_out = v->name;
        return std::nullopt;
    }
    if (const auto* iri = std::get_if<Iri>(&slot)) return BoundValue{*iri};
    if (const auto* lit = std::get_if<LiteralValue>(&slot))
        return BoundValue{*lit};
    return BoundValue{Iri{reg.expand(std::get<Term>(slot))}};
}

void collect_vars(const PatternSlot& slot, std::set<std::string>& out) {
    if (const auto* v = std::get_if<Var>(&slot)) out.insert(v->name);
}

}  // namespace

std::vector<Binding> query(const Graph& g, const Query& q) {
    const auto& reg = g.registry();

    std::set<std::string> pattern_vars;
    for (const auto& p : q.patterns) {
        collect_vars(p.subject, pattern_vars);
        collect_vars(p.predicate, pattern_vars);
        collect_vars(p.object, pattern_vars);
    }
    std::vector<std::string> select = q.select;
    if (select.empty())
        select.assign(pattern_vars.begin(), pattern_vars.end());
    else
        for (const auto& v : select)
            if (!pattern_vars.count(v)) throw UnboundSelect(v);
    std::sort(select.begin(), select.end());
    select.erase(std::unique(select.begin(), select.end()), select.end());

    std::vector<Binding> partial{Binding{}};
    for (const auto& pat : q.patterns) {
        std::vector<Binding> next;
        for (const auto& binding : partial) {
            std::string sv, pv, ov;
            auto sc = resolve_slot(pat.subject, reg, sv);
            auto pc = resolve_slot(pat.predicate, reg, pv);
            auto oc = resolve_slot(pat.object, reg, ov);
            // apply existing bindings
            auto bound = [&](std::optional<BoundValue>& c,
                             const std::string& var) {
                if (!c && binding.count(var)) c = binding.at(var);
            };
            bound(sc, sv);
            bound(pc, pv);
            bound(oc, ov);

            // candidate statements via the narrowest available index
            std::vector<const Statement*> scratch;
            std::span<const Statement* const> candidates;
            if (sc && std::holds_alternative<Iri>(*sc)) {
                candidates = g.by_subject(std::get<Iri>(*sc).value);
            } else if (pc && std::holds_alternative<Iri>(*pc)) {
                candidates = g.by_predicate_iri(std::get<Iri>(*pc).value);
            } else {
                for (const auto& st : g.statements()) scratch.push_back(&st);
                candidates = scratch;
            }

            for (const Statement* st : candidates) {
                Binding b = binding;
                bool ok = true;
                auto match = [&](const std::optional<BoundValue>& c,
                                 const std::string& var, int slot) {
                    BoundValue actual = statement_slot(*st, slot, reg);
                    if (c) {
                        if (*c != actual) ok = false;
                    } else {
                        auto it = b.find(var);
                        if (it == b.end())
                            b.emplace(var, actual);
                        else if (it->second != actual)
                            ok = false;
                    }
                };
                match(sc, sv, 0);
                if (ok) match(pc, pv, 1);
                if (ok) match(oc, ov, 2);
                if (ok) next.push_back(std::move(b));
            }
        }
        partial = std::move(next);
    }

    // project, dedupe, order by rendered values in variable-name order
    std::vector<Binding> out;
    for (const auto& b : partial) {
        Binding projected;
        for (const auto& v : select) {
            auto it = b.find(v);
            if (it != b.end()) projected.emplace(v, it->second);
        }
        out.push_back(std::move(projected));
    }
    auto key = [&](const Binding& b) {
        std::string k;
        for (const auto& v : select) {
            auto it = b.find(v);
            k += it == b.end() ? std::string("~") : render_bound(it->second);
            k += '\x1f';
        }
        return k;
    };
    std::sort(out.begin(), out.end(),
              [&](const Binding& a, const Binding& b) { return key(a) < key(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- entity views ----

std::optional<EntityNode> get_entity(const Graph& g, const ark::ArkId& a) {
    const auto& reg = g.registry();
    auto stmts = g.by_subject(a.iri());
    if (stmts.empty()) return std::nullopt;

    EntityNode node;
    node.ark = a;
    std::optional<EntityClass> cls;
    for (const Statement* st : stmts) {
        node.statements.push_back(*st);
        if (st->predicate == rdf_type()) {
            if (const auto* iri = std::get_if<Iri>(&st->object)) {
                const std::string& project = reg.project_iri();
                if (iri->value.starts_with(project))
                    cls = class_from_name(iri->value.substr(project.size()));
            }
        } else if (st->predicate == is_part_of()) {
            if (const auto* iri = std::get_if<Iri>(&st->object)) {
                try {
                    node.parent = ark::from_iri(iri->value);
                } catch (const Error&) {
                }
            }
        }
    }
    if (!cls) return std::nullopt;
    node.cls = *cls;
    return node;
}

std::vector<EntityNode> select_subtree(const Graph& g, const ark::ArkId& root) {
    const auto& reg = g.registry();
    auto root_node = get_entity(g, root);
    if (!root_node) throw UnknownRoot(root.render());

    std::set<std::string> visited;
    std::deque<std::string> work{root.iri()};
    std::vector<EntityNode> out;
    std::string part_of_iri = reg.expand(is_part_of());

    while (!work.empty()) {
        std::string iri = work.front();
        work.pop_front();
        if (!visited.insert(iri).second) continue;

        ark::ArkId a;
        try {
            a = ark::from_iri(iri);
        } catch (const Error&) {
            continue;
        }
        auto node = get_entity(g, a);
        if (!node) continue;

        for (const Statement* st : g.by_subject(iri))
            if (st->predicate == has_part())
                if (const auto* o = std::get_if<Iri>(&st->object))
                    work.push_back(o->value);
        for (const Statement* st : g.by_predicate_iri(part_of_iri))
            if (const auto* o = std::get_if<Iri>(&st->object))
                if (o->value == iri) work.push_back(st->subject);

        out.push_back(std::move(*node));
    }
    std::sort(out.begin(), out.end(),
              [](const EntityNode& a, const EntityNode& b) {
                  return a.ark.render() < b.ark.render();
              });
    return out;
}

}  // namespace specimeta::graph
