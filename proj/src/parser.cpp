#include "deducto/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "deducto/traits.hpp"

namespace deducto {

namespace {

struct Token {
    enum class Kind { Ident, Int, Float, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    long long int_value = 0;
    double float_value = 0;
    SourceLoc loc;

    bool is(std::string_view s) const {
        return (kind == Kind::Ident || kind == Kind::Punct) && text == s;
    }
};

class Lexer {
public:
    Lexer(std::string_view text, std::string path) : text_(text), path_(std::move(path)) {
        tokenize();
    }

    std::vector<Token> take() { return std::move(tokens_); }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::SyntaxError, path_ + ": " + msg, {}, {line_, col()});
    }

    int col() const { return static_cast<int>(pos_ - line_start_) + 1; }

    void tokenize() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
                line_start_ = pos_;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
                continue;
            }
            if (c == '/' && peek(1) == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
                continue;
            }
            if (c == '/' && peek(1) == '*') {
                pos_ += 2;
                while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) {
                    if (text_[pos_] == '\n') {
                        ++line_;
                        line_start_ = pos_ + 1;
                    }
                    ++pos_;
                }
                if (pos_ + 1 >= text_.size()) fail("unterminated block comment");
                pos_ += 2;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                lex_ident();
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                lex_number();
                continue;
            }
            lex_punct();
        }
        Token end;
        end.loc = {line_, col()};
        tokens_.push_back(end);
    }

    char peek(size_t ahead) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void lex_ident() {
        SourceLoc loc{line_, col()};
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        Token t;
        t.kind = Token::Kind::Ident;
        t.text = std::string(text_.substr(start, pos_ - start));
        t.loc = loc;
        tokens_.push_back(std::move(t));
    }

    void lex_number() {
        SourceLoc loc{line_, col()};
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        bool is_float = false;
        if (pos_ < text_.size() && text_[pos_] == '.' &&
            std::isdigit(static_cast<unsigned char>(peek(1)))) {
            is_float = true;
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            size_t e = pos_ + 1;
            if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
            if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
                is_float = true;
                pos_ = e;
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            }
        }
        Token t;
        t.text = std::string(text_.substr(start, pos_ - start));
        t.loc = loc;
        if (is_float) {
            t.kind = Token::Kind::Float;
            t.float_value = std::stod(t.text);
        } else {
            t.kind = Token::Kind::Int;
            t.int_value = std::stoll(t.text);
        }
        tokens_.push_back(std::move(t));
    }

    void lex_punct() {
        SourceLoc loc{line_, col()};
        static constexpr std::string_view two_char[] = {"[[", "]]", "&&", "++", "->", "::"};
        std::string text;
        for (std::string_view p : two_char) {
            if (text_.substr(pos_, 2) == p) {
                text = std::string(p);
                break;
            }
        }
        if (text.empty()) {
            static constexpr std::string_view singles = "(){}<>,;=+*&.!-[]";
            char c = text_[pos_];
            if (singles.find(c) == std::string_view::npos)
                fail(std::string("unexpected character '") + c + "'");
            text = std::string(1, c);
        }
        pos_ += text.size();
        Token t;
        t.kind = Token::Kind::Punct;
        t.text = std::move(text);
        t.loc = loc;
        tokens_.push_back(std::move(t));
    }

    std::string_view text_;
    std::string path_;
    size_t pos_ = 0;
    size_t line_start_ = 0;
    int line_ = 1;
    std::vector<Token> tokens_;
};

// Words that may make up a builtin scalar type name.
bool is_scalar_word(const std::string& s) {
    return s == "bool" || s == "char" || s == "short" || s == "int" || s == "long" ||
           s == "float" || s == "double" || s == "void" || s == "signed" || s == "unsigned" ||
           s == "size_t";
}

std::optional<ScalarKind> scalar_kind_for(std::vector<std::string> words) {
    if (words.size() == 1 && words[0] == "size_t") return ScalarKind::ULong;
    if (words.size() > 1 && words.back() == "int") words.pop_back();
    std::string joined;
    for (const auto& w : words) {
        if (!joined.empty()) joined += ' ';
        joined += w;
    }
    if (joined == "bool") return ScalarKind::Bool;
    if (joined == "char") return ScalarKind::Char;
    if (joined == "signed char") return ScalarKind::SChar;
    if (joined == "unsigned char") return ScalarKind::UChar;
    if (joined == "short") return ScalarKind::Short;
    if (joined == "unsigned short") return ScalarKind::UShort;
    if (joined == "int" || joined == "signed") return ScalarKind::Int;
    if (joined == "unsigned") return ScalarKind::UInt;
    if (joined == "long") return ScalarKind::Long;
    if (joined == "unsigned long") return ScalarKind::ULong;
    if (joined == "long long") return ScalarKind::LongLong;
    if (joined == "unsigned long long") return ScalarKind::ULongLong;
    if (joined == "float") return ScalarKind::Float;
    if (joined == "double") return ScalarKind::Double;
    if (joined == "long double") return ScalarKind::LongDouble;
    if (joined == "void") return ScalarKind::Void;
    return std::nullopt;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, std::string path)
        : tokens_(std::move(tokens)), path_(std::move(path)) {}

    std::vector<Decl> parse_program() {
        std::vector<Decl> decls;
        while (!at_end()) decls.push_back(parse_decl());
        return decls;
    }

private:
    const Token& peek(size_t ahead = 0) const {
        size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    bool at_end() const { return peek().kind == Token::Kind::End; }

    bool consume(std::string_view s) {
        if (peek().is(s)) {
            advance();
            return true;
        }
        return false;
    }

    const Token& expect(std::string_view s, const char* what) {
        if (!peek().is(s)) fail(std::string("expected '") + std::string(s) + "' " + what);
        return advance();
    }

    std::string expect_ident(const char* what) {
        if (peek().kind != Token::Kind::Ident)
            fail(std::string("expected an identifier ") + what);
        return advance().text;
    }

    [[noreturn]] void fail(const std::string& msg, ErrorCode code = ErrorCode::SyntaxError) const {
        const Token& t = peek();
        std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw Error(code, path_ + ": " + msg + " (got " + got + ")", {}, t.loc);
    }

    [[noreturn]] void fail_at(SourceLoc loc, const std::string& msg, ErrorCode code,
                              std::string detail = {}) const {
        throw Error(code, path_ + ": " + msg, std::move(detail), loc);
    }

    // Namespace qualifiers are stripped: std::declval is the token declval.
    void skip_std_prefix() {
        while (peek().is("std") && peek(1).is("::")) {
            advance();
            advance();
        }
    }

    // ---- declarations ----------------------------------------------------

    Decl parse_decl() {
        const Token& t = peek();
        if (t.is("struct")) return parse_struct({});
        if (t.is("template")) return parse_template();
        if (t.is("static_assert_type")) return parse_type_assert();
        if (t.is("assert_value")) return parse_value_assert();
        return parse_var_or_func();
    }

    Decl parse_template() {
        SourceLoc loc = peek().loc;
        expect("template", "to begin a template declaration");
        expect("<", "after 'template'");
        std::vector<std::string> tparams;
        do {
            expect("typename", "before each template parameter");
            tparams.push_back(expect_ident("as a template parameter name"));
        } while (consume(","));
        expect(">", "after template parameters");
        if (peek().is("struct")) return parse_struct(tparams);
        Decl d = parse_var_or_func();
        auto* fn = std::get_if<FuncDecl>(&d);
        if (!fn) fail("expected a function or struct declaration after template<...>");
        fn->template_params = tparams;
        fn->loc = loc;
        return d;
    }

    Decl parse_struct(std::vector<std::string> tparams) {
        SourceLoc loc = peek().loc;
        expect("struct", "to begin a struct declaration");
        ClassDef def;
        def.loc = loc;
        def.template_params = std::move(tparams);
        def.name = expect_ident("as the struct name");
        while (peek().is("[[")) {
            advance();
            std::string attr = expect_ident("as an attribute name");
            if (attr == "abstract")
                def.is_abstract = true;
            else if (attr == "trivial_copy")
                def.is_trivially_copy_assignable = true;
            else if (attr == "nontrivial_copy")
                def.is_trivially_copy_assignable = false;
            else
                fail("unknown attribute '" + attr + "'");
            expect("]]", "to close the attribute");
        }
        expect("{", "to open the struct body");
        while (!peek().is("}")) {
            if (at_end()) fail("unterminated struct body");
            parse_struct_member(def);
        }
        expect("}", "to close the struct body");
        expect(";", "after the struct declaration");
        return StructDecl{std::move(def), loc};
    }

    void parse_struct_member(ClassDef& def) {
        bool is_static = consume("static");
        if (peek().is("auto")) {
            // trailing-form call operator
            advance();
            expect("operator", "after 'auto' in a member declaration");
            expect("(", "in operator()");
            expect(")", "in operator()");
            FnDeclForm form;
            form.style = DeclStyle::Trailing;
            form.params = parse_params();
            expect("->", "before the trailing return type");
            form.return_type = parse_type_expr();
            skip_body();
            expect(";", "after the member declaration");
            def.call_operators.push_back(std::move(form));
            return;
        }
        TypeExprPtr type = parse_type_expr();
        if (peek().is("operator")) {
            advance();
            expect("(", "in operator()");
            expect(")", "in operator()");
            FnDeclForm form;
            form.style = DeclStyle::Leading;
            form.params = parse_params();
            form.return_type = type;
            skip_body();
            expect(";", "after the member declaration");
            def.call_operators.push_back(std::move(form));
            return;
        }
        SourceLoc nloc = peek().loc;
        std::string name = expect_ident("as the field name");
        expect(";", "after the field declaration");
        for (const auto& f : def.fields)
            if (f.name == name)
                fail_at(nloc, "duplicate field '" + name + "' in '" + def.name + "'",
                        ErrorCode::Redeclaration, name);
        for (const auto& f : def.static_fields)
            if (f.name == name)
                fail_at(nloc, "duplicate field '" + name + "' in '" + def.name + "'",
                        ErrorCode::Redeclaration, name);
        auto& list = is_static ? def.static_fields : def.fields;
        list.push_back(ClassDef::Member{std::move(name), std::move(type)});
    }

    Decl parse_type_assert() {
        SourceLoc loc = peek().loc;
        expect("static_assert_type", "");
        expect("(", "after static_assert_type");
        std::string name = expect_ident("as the checked declaration name");
        expect(",", "between the name and the expected type");
        TypeExprPtr expected = parse_type_expr();
        expect(")", "to close static_assert_type");
        expect(";", "after static_assert_type");
        return TypeAssert{std::move(name), std::move(expected), loc};
    }

    Decl parse_value_assert() {
        SourceLoc loc = peek().loc;
        expect("assert_value", "");
        expect("(", "after assert_value");
        ExprPtr e = parse_expr();
        expect(",", "between the expression and the expected value");
        bool negative = consume("-");
        if (peek().kind != Token::Kind::Int) fail("expected an integer literal");
        long long expected = advance().int_value;
        if (negative) expected = -expected;
        expect(")", "to close assert_value");
        expect(";", "after assert_value");
        return ValueAssert{std::move(e), expected, loc};
    }

    std::string parse_function_name() {
        if (consume("operator")) {
            expect("+", "after 'operator'");
            return "operator+";
        }
        return expect_ident("as the declaration name");
    }

    Decl parse_var_or_func() {
        SourceLoc loc = peek().loc;
        size_t saved = pos_;
        bool saw_const = consume("const");
        if (peek().is("auto")) {
            SourceLoc auto_loc = peek().loc;
            advance();
            if (peek().is("&&"))
                fail_at(peek().loc, path_ + ": 'auto&&' is not supported",
                        ErrorCode::UnsupportedPattern, "auto&&");
            bool ref = consume("&");
            if (!saw_const && !ref &&
                (peek().is("operator") ||
                 (peek().kind == Token::Kind::Ident && peek(1).is("(")))) {
                // trailing-return function declaration
                FuncDecl fn;
                fn.loc = auto_loc;
                fn.name = parse_function_name();
                expect("(", "to open the parameter list");
                --pos_;  // parse_params expects the '('
                fn.form.style = DeclStyle::Trailing;
                fn.form.params = parse_params();
                expect("->", "before the trailing return type");
                fn.form.return_type = parse_type_expr();
                skip_body();
                expect(";", "after the function declaration");
                return fn;
            }
            VarDecl var;
            var.loc = loc;
            var.auto_pattern = AutoPattern{saw_const, ref};
            var.name = expect_ident("as the variable name");
            expect("=", "(a variable declared with auto needs an initializer)");
            var.init = parse_expr();
            expect(";", "after the variable declaration");
            return var;
        }
        pos_ = saved;
        TypeExprPtr type = parse_type_expr();
        std::string name = parse_function_name();
        if (peek().is("(")) {
            FuncDecl fn;
            fn.loc = loc;
            fn.name = std::move(name);
            fn.form.style = DeclStyle::Leading;
            fn.form.params = parse_params();
            fn.form.return_type = std::move(type);
            skip_body();
            expect(";", "after the function declaration");
            return fn;
        }
        VarDecl var;
        var.loc = loc;
        var.declared_type = std::move(type);
        var.name = std::move(name);
        if (consume("=")) var.init = parse_expr();
        expect(";", "after the variable declaration");
        return var;
    }

    std::vector<FnParam> parse_params() {
        expect("(", "to open the parameter list");
        std::vector<FnParam> params;
        if (!peek().is(")")) {
            do {
                FnParam p;
                p.type = parse_type_expr();
                if (peek().kind == Token::Kind::Ident && !peek().is("operator"))
                    p.name = advance().text;
                params.push_back(std::move(p));
            } while (consume(","));
        }
        expect(")", "to close the parameter list");
        return params;
    }

    /// Function bodies are ignored: skip a balanced brace block.
    void skip_body() {
        if (!peek().is("{")) return;
        int depth = 0;
        do {
            if (at_end()) fail("unterminated function body");
            if (peek().is("{")) ++depth;
            if (peek().is("}")) --depth;
            advance();
        } while (depth > 0);
    }

    // ---- type expressions -------------------------------------------------

    TypeExprPtr parse_type_expr() {
        SourceLoc loc = peek().loc;
        int const_layers = 0;
        int volatile_layers = 0;
        for (;;) {
            if (consume("typename")) continue;
            if (consume("const")) {
                ++const_layers;
                continue;
            }
            if (consume("volatile")) {
                ++volatile_layers;
                continue;
            }
            break;
        }
        TypeExprPtr t = parse_type_core();
        while (const_layers-- > 0) t = make_type_expr(te::AddConst{std::move(t)}, loc);
        while (volatile_layers-- > 0) t = make_type_expr(te::AddVolatile{std::move(t)}, loc);
        return parse_type_suffixes(std::move(t));
    }

    TypeExprPtr parse_type_suffixes(TypeExprPtr t) {
        for (;;) {
            SourceLoc loc = peek().loc;
            if (peek().is("*")) {
                advance();
                t = make_type_expr(te::PointerTo{std::move(t)}, loc);
                for (;;) {
                    if (consume("const")) {
                        t = make_type_expr(te::AddConst{std::move(t)}, loc);
                    } else if (consume("volatile")) {
                        t = make_type_expr(te::AddVolatile{std::move(t)}, loc);
                    } else {
                        break;
                    }
                }
                continue;
            }
            if (peek().is("&")) {
                advance();
                return make_type_expr(te::LvalueRefTo{std::move(t)}, loc);
            }
            if (peek().is("&&")) {
                advance();
                return make_type_expr(te::RvalueRefTo{std::move(t)}, loc);
            }
            if (peek().is("(")) {
                advance();
                std::vector<TypeExprPtr> params;
                if (!peek().is(")")) {
                    do {
                        params.push_back(parse_type_expr());
                    } while (consume(","));
                }
                expect(")", "to close the function type");
                return make_type_expr(te::FunctionOf{std::move(t), std::move(params)}, loc);
            }
            return t;
        }
    }

    TypeExprPtr parse_type_core() {
        skip_std_prefix();
        SourceLoc loc = peek().loc;
        if (peek().is("decltype")) {
            advance();
            expect("(", "after decltype");
            if (peek().is("auto"))
                fail_at(peek().loc, path_ + ": 'decltype(auto)' is not supported",
                        ErrorCode::UnsupportedPattern, "decltype(auto)");
            ExprPtr e = parse_expr();
            expect(")", "to close decltype");
            return make_type_expr(te::DecltypeOf{std::move(e)}, loc);
        }
        if (peek().is("auto"))
            fail_at(loc, path_ + ": 'auto' is not a type expression here",
                    ErrorCode::UnsupportedPattern, "auto");
        if (peek().kind != Token::Kind::Ident) fail("expected a type name");
        if (is_scalar_word(peek().text)) {
            std::vector<std::string> words;
            while (peek().kind == Token::Kind::Ident && is_scalar_word(peek().text))
                words.push_back(advance().text);
            auto kind = scalar_kind_for(words);
            if (!kind) fail("invalid builtin type name");
            return concrete_type_expr(Type::scalar(*kind), loc);
        }
        std::string name = advance().text;
        if (name == "enable_if" && peek().is("<")) return parse_enable_if(loc);
        if (name == "result_of" && peek().is("<")) return parse_result_of(loc);
        if (is_transform_trait(name) && peek().is("<")) return parse_transform(name, loc);
        if (is_predicate_trait(name) && peek().is("<")) {
            // A predicate in type position: parse it for a precise message.
            parse_trait_args(predicate_arity(name));
            expect("::", "after the trait application");
            expect("value", "(predicates expose ::value)");
            fail_at(loc,
                    path_ + ": '" + name +
                        "<...>::value' is a boolean, not a type; it is only usable inside an "
                        "enable_if condition",
                    ErrorCode::SyntaxError, name);
        }
        if (peek().is("<")) {
            advance();
            std::vector<TypeExprPtr> args;
            do {
                args.push_back(parse_type_expr());
            } while (consume(","));
            expect(">", "to close the template argument list");
            if (peek().is("::")) {
                advance();
                if (peek().is("type") || peek().is("value"))
                    fail_at(loc, path_ + ": unknown trait '" + name + "'",
                            ErrorCode::UnknownTrait, name);
                fail("expected 'type' or 'value' after '::'");
            }
            return make_type_expr(te::TemplateId{std::move(name), std::move(args)}, loc);
        }
        if (peek().is("::")) {
            advance();
            if (peek().is("type") || peek().is("value"))
                fail_at(loc, path_ + ": unknown trait '" + name + "'", ErrorCode::UnknownTrait,
                        name);
            fail("expected 'type' or 'value' after '::'");
        }
        return make_type_expr(te::Named{std::move(name)}, loc);
    }

    std::vector<TypeExprPtr> parse_trait_args(int arity) {
        expect("<", "to open the trait argument list");
        std::vector<TypeExprPtr> args;
        do {
            args.push_back(parse_type_expr());
        } while (consume(","));
        expect(">", "to close the trait argument list");
        if (arity >= 0 && static_cast<int>(args.size()) != arity)
            fail("trait takes " + std::to_string(arity) + " type argument(s)");
        return args;
    }

    TypeExprPtr parse_transform(const std::string& name, SourceLoc loc) {
        std::vector<TypeExprPtr> args = parse_trait_args(1);
        expect("::", "after the trait application");
        expect("type", "(transforms expose ::type)");
        return make_type_expr(te::TraitApply{name, std::move(args), {}}, loc);
    }

    TypeExprPtr parse_enable_if(SourceLoc loc) {
        expect("<", "after enable_if");
        BoolSpec cond = parse_condition();
        std::vector<TypeExprPtr> args;
        if (consume(",")) args.push_back(parse_type_expr());
        expect(">", "to close enable_if");
        expect("::", "after enable_if<...>");
        expect("type", "(enable_if exposes ::type)");
        return make_type_expr(te::TraitApply{"enable_if", std::move(args), {std::move(cond)}},
                              loc);
    }

    TypeExprPtr parse_result_of(SourceLoc loc) {
        expect("<", "after result_of");
        TypeExprPtr call = parse_type_expr();
        if (!std::holds_alternative<te::FunctionOf>(call->node))
            fail_at(call->loc, path_ + ": result_of expects a call type of the form F(Args...)",
                    ErrorCode::SyntaxError, "result_of");
        expect(">", "to close result_of");
        expect("::", "after result_of<...>");
        expect("type", "(result_of exposes ::type)");
        return make_type_expr(te::TraitApply{"result_of", {std::move(call)}, {}}, loc);
    }

    BoolSpec parse_condition() {
        BoolSpec cond;
        cond.negated = consume("!");
        skip_std_prefix();
        if (consume("true")) {
            cond.literal = true;
            return cond;
        }
        if (consume("false")) {
            cond.literal = false;
            return cond;
        }
        SourceLoc loc = peek().loc;
        std::string name = expect_ident("as a predicate trait name");
        int arity = predicate_arity(name);
        if (arity < 0)
            fail_at(loc, path_ + ": unknown trait '" + name + "'", ErrorCode::UnknownTrait,
                    name);
        cond.trait = std::move(name);
        cond.args = parse_trait_args(arity);
        expect("::", "after the predicate application");
        expect("value", "(predicates expose ::value)");
        return cond;
    }

    // ---- expressions ------------------------------------------------------

    ExprPtr parse_expr() { return parse_add(); }

    ExprPtr parse_add() {
        ExprPtr lhs = parse_postfix();
        while (peek().is("+")) {
            SourceLoc loc = advance().loc;
            ExprPtr rhs = parse_postfix();
            lhs = make_expr(ex::Add{std::move(lhs), std::move(rhs)}, loc);
        }
        return lhs;
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        for (;;) {
            SourceLoc loc = peek().loc;
            if (consume(".")) {
                std::string field = expect_ident("as a member name");
                e = make_expr(ex::Member{std::move(e), std::move(field), false}, loc);
            } else if (consume("->")) {
                std::string field = expect_ident("as a member name");
                e = make_expr(ex::Member{std::move(e), std::move(field), true}, loc);
            } else if (consume("++")) {
                e = make_expr(ex::PostInc{std::move(e)}, loc);
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_primary() {
        skip_std_prefix();
        const Token& t = peek();
        SourceLoc loc = t.loc;
        if (t.kind == Token::Kind::Int) {
            advance();
            return make_expr(ex::IntLit{t.int_value}, loc);
        }
        if (t.kind == Token::Kind::Float) {
            advance();
            return make_expr(ex::FloatLit{t.float_value}, loc);
        }
        if (t.is("(")) {
            advance();
            ExprPtr inner = parse_expr();
            expect(")", "to close the parenthesized expression");
            return make_expr(ex::Paren{std::move(inner)}, loc);
        }
        if (t.is("declval")) {
            advance();
            expect("<", "after declval");
            TypeExprPtr arg = parse_type_expr();
            expect(">", "to close declval");
            expect("(", "after declval<...>");
            expect(")", "after declval<...>(");
            return make_expr(ex::Declval{std::move(arg)}, loc);
        }
        if (t.kind == Token::Kind::Ident) {
            std::string name = advance().text;
            if (peek().is("(")) {
                advance();
                std::vector<ExprPtr> args;
                if (!peek().is(")")) {
                    do {
                        args.push_back(parse_expr());
                    } while (consume(","));
                }
                expect(")", "to close the call");
                return make_expr(ex::Call{std::move(name), std::move(args)}, loc);
            }
            return make_expr(ex::Id{std::move(name)}, loc);
        }
        fail("expected an expression");
    }

    std::vector<Token> tokens_;
    std::string path_;
    size_t pos_ = 0;
};

std::vector<std::string> scan_directives(std::string_view text) {
    std::vector<std::string> directives;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        size_t start = line.find_first_not_of(" \t\r");
        if (start != std::string_view::npos && line.substr(start, 3) == "//!") {
            std::string_view body = line.substr(start + 3);
            size_t b = body.find_first_not_of(" \t");
            size_t e = body.find_last_not_of(" \t\r");
            directives.emplace_back(b == std::string_view::npos
                                        ? std::string()
                                        : std::string(body.substr(b, e - b + 1)));
        }
        pos = eol + 1;
    }
    return directives;
}

} // namespace

SourceFile parse(std::string_view text, std::string path) {
    SourceFile file;
    file.path = path;
    file.directives = scan_directives(text);
    Lexer lexer(text, path);
    Parser parser(lexer.take(), std::move(path));
    file.decls = parser.parse_program();
    return file;
}

SourceFile parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot read '" + path + "'", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

namespace {

std::string print_params(const std::vector<FnParam>& params) {
    std::string s = "(";
    for (size_t i = 0; i < params.size(); ++i) {
        if (i) s += ", ";
        s += to_dsl(*params[i].type);
        if (!params[i].name.empty()) s += " " + params[i].name;
    }
    return s + ")";
}

std::string print_template_prefix(const std::vector<std::string>& tparams) {
    if (tparams.empty()) return {};
    std::string s = "template <";
    for (size_t i = 0; i < tparams.size(); ++i) {
        if (i) s += ", ";
        s += "typename " + tparams[i];
    }
    return s + ">\n";
}

struct DeclPrinter {
    std::string operator()(const VarDecl& v) const {
        std::string s;
        if (v.auto_pattern) {
            if (v.auto_pattern->add_const) s += "const ";
            s += "auto";
            if (v.auto_pattern->lvalue_ref) s += "&";
        } else {
            s += to_dsl(*v.declared_type);
        }
        s += " " + v.name;
        if (v.init) s += " = " + to_dsl(*v.init);
        return s + ";";
    }

    std::string operator()(const StructDecl& sd) const {
        const ClassDef& def = sd.def;
        std::string s = print_template_prefix(def.template_params);
        s += "struct " + def.name;
        if (def.is_abstract) s += " [[abstract]]";
        if (!def.is_trivially_copy_assignable) s += " [[nontrivial_copy]]";
        s += " {\n";
        for (const auto& f : def.fields) s += "    " + to_dsl(*f.type) + " " + f.name + ";\n";
        for (const auto& f : def.static_fields)
            s += "    static " + to_dsl(*f.type) + " " + f.name + ";\n";
        for (const auto& op : def.call_operators) {
            if (op.style == DeclStyle::Trailing)
                s += "    auto operator()" + print_params(op.params) + " -> " +
                     to_dsl(*op.return_type) + ";\n";
            else
                s += "    " + to_dsl(*op.return_type) + " operator()" + print_params(op.params) +
                     ";\n";
        }
        return s + "};";
    }

    std::string operator()(const FuncDecl& f) const {
        std::string s = print_template_prefix(f.template_params);
        if (f.form.style == DeclStyle::Trailing)
            s += "auto " + f.name + print_params(f.form.params) + " -> " +
                 to_dsl(*f.form.return_type);
        else
            s += to_dsl(*f.form.return_type) + " " + f.name + print_params(f.form.params);
        return s + ";";
    }

    std::string operator()(const TypeAssert& a) const {
        return "static_assert_type(" + a.name + ", " + to_dsl(*a.expected) + ");";
    }

    std::string operator()(const ValueAssert& a) const {
        return "assert_value(" + to_dsl(*a.expr) + ", " + std::to_string(a.expected) + ");";
    }
};

bool equal_form(const FnDeclForm& a, const FnDeclForm& b) {
    if (a.style != b.style || a.params.size() != b.params.size()) return false;
    for (size_t i = 0; i < a.params.size(); ++i) {
        if (a.params[i].name != b.params[i].name) return false;
        if (!structurally_equal(*a.params[i].type, *b.params[i].type)) return false;
    }
    return structurally_equal(*a.return_type, *b.return_type);
}

bool equal_members(const std::vector<ClassDef::Member>& a,
                   const std::vector<ClassDef::Member>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].name != b[i].name) return false;
        if (!structurally_equal(*a[i].type, *b[i].type)) return false;
    }
    return true;
}

} // namespace

std::string print_source(const SourceFile& file) {
    std::string out;
    for (const auto& d : file.directives) out += "//! " + d + "\n";
    DeclPrinter printer;
    for (const auto& decl : file.decls) out += std::visit(printer, decl) + "\n";
    return out;
}

bool structurally_equal(const Decl& a, const Decl& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using N = std::decay_t<decltype(x)>;
            const auto& y = std::get<N>(b);
            if constexpr (std::is_same_v<N, VarDecl>) {
                if (x.name != y.name) return false;
                if (x.auto_pattern.has_value() != y.auto_pattern.has_value()) return false;
                if (x.auto_pattern &&
                    (x.auto_pattern->add_const != y.auto_pattern->add_const ||
                     x.auto_pattern->lvalue_ref != y.auto_pattern->lvalue_ref))
                    return false;
                if (!x.auto_pattern && !structurally_equal(*x.declared_type, *y.declared_type))
                    return false;
                if ((x.init == nullptr) != (y.init == nullptr)) return false;
                return !x.init || structurally_equal(*x.init, *y.init);
            } else if constexpr (std::is_same_v<N, StructDecl>) {
                const ClassDef& p = x.def;
                const ClassDef& q = y.def;
                if (p.name != q.name || p.template_params != q.template_params ||
                    p.is_abstract != q.is_abstract ||
                    p.is_trivially_copy_assignable != q.is_trivially_copy_assignable)
                    return false;
                if (!equal_members(p.fields, q.fields) ||
                    !equal_members(p.static_fields, q.static_fields))
                    return false;
                if (p.call_operators.size() != q.call_operators.size()) return false;
                for (size_t i = 0; i < p.call_operators.size(); ++i)
                    if (!equal_form(p.call_operators[i], q.call_operators[i])) return false;
                return true;
            } else if constexpr (std::is_same_v<N, FuncDecl>) {
                return x.name == y.name && x.template_params == y.template_params &&
                       equal_form(x.form, y.form);
            } else if constexpr (std::is_same_v<N, TypeAssert>) {
                return x.name == y.name && structurally_equal(*x.expected, *y.expected);
            } else if constexpr (std::is_same_v<N, ValueAssert>) {
                return x.expected == y.expected && structurally_equal(*x.expr, *y.expr);
            }
        },
        a);
}

bool structurally_equal(const SourceFile& a, const SourceFile& b) {
    if (a.decls.size() != b.decls.size()) return false;
    for (size_t i = 0; i < a.decls.size(); ++i)
        if (!structurally_equal(a.decls[i], b.decls[i])) return false;
    return true;
}

} // namespace deducto
