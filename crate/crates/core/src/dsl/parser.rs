use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};

use super::lexer::{lex, Tok, Token};
use super::{ConfAlgDef, Decl, Diagnostic, Severity, SourceFile};
use crate::confalgebra::ConformalAlgebra;
use crate::confmap::{ConformalMap, ModuleMap};
use crate::confmodule::ModElement;
use crate::exactpoly::{Poly, Var};
use crate::liealgebra::LieAlgebra;
use crate::Rational;

const DECL_KEYWORDS: [&str; 4] = ["liealg", "confalg", "map", "modmap"];
const KEYWORDS: [&str; 8] = [
    "liealg",
    "confalg",
    "map",
    "modmap",
    "basis",
    "generators",
    "bracket",
    "cur",
];
const MAX_EXPONENT: u32 = 64;

type P = Poly<Rational>;
type M = ModElement<Rational>;

/// Where an expression appears; decides which variables are legal.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Ctx {
    Lie,
    Bracket,
    Map,
    ModMap,
}

impl Ctx {
    fn check(self, v: Var) -> Option<String> {
        let ok = match self {
            Ctx::Lie => false,
            Ctx::Bracket => matches!(v, Var::D | Var::Lam),
            Ctx::Map => matches!(v, Var::D | Var::X),
            Ctx::ModMap => v == Var::D,
        };
        if ok {
            return None;
        }
        Some(match (self, v) {
            (Ctx::Lie, _) => format!("variable `{v}` is not allowed in a Lie algebra bracket"),
            (Ctx::ModMap, Var::X) => "variable `x` is not allowed in a modmap body".to_string(),
            (_, Var::Lam) => "variable `lam` is only allowed in confalg brackets".to_string(),
            (_, Var::X) => "variable `x` is only allowed in map bodies".to_string(),
            _ => format!("variable `{v}` cannot be used in the text format"),
        })
    }
}

fn is_reserved(s: &str) -> bool {
    KEYWORDS.contains(&s) || Var::from_name(s).is_some()
}

/// Parses a `.lca` file. On success the returned file carries any warnings;
/// on failure every diagnostic (errors and warnings) is returned in source
/// order.
pub fn parse(src: &str) -> Result<SourceFile, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let toks = lex(src, &mut diags);
    let mut p = Parser {
        src,
        toks,
        pos: 0,
        diags,
        file: SourceFile::default(),
    };
    p.file();
    let mut diags = p.diags;
    diags.sort_by_key(|d| (d.line, d.column));
    if diags.iter().any(Diagnostic::is_error) {
        Err(diags)
    } else {
        let mut file = p.file;
        file.warnings = diags;
        Ok(file)
    }
}

type PResult<T> = Result<T, ()>;

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
    file: SourceFile,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_tok(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek_tok(), Tok::Sym(t) if *t == s)
    }

    fn at_ident(&self, s: &str) -> bool {
        matches!(self.peek_tok(), Tok::Ident(t) if t == s)
    }

    fn at_decl_keyword(&self) -> bool {
        matches!(self.peek_tok(), Tok::Ident(t) if DECL_KEYWORDS.contains(&t.as_str()))
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.at_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn diag(&mut self, severity: Severity, tok: &Token, msg: impl Into<String>) {
        let d = Diagnostic::at(severity, msg, self.src, tok.line, tok.col, tok.len);
        self.diags.push(d);
    }

    fn error_count(&self) -> usize {
        self.diags.iter().filter(|d| d.is_error()).count()
    }

    fn error(&mut self, tok: &Token, msg: impl Into<String>) {
        self.diag(Severity::Error, tok, msg);
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of file".to_string(),
        }
    }

    fn unexpected<T>(&mut self, expected: &str) -> PResult<T> {
        let tok = self.peek().clone();
        self.error(
            &tok,
            format!("expected {expected}, found {}", Self::describe(&tok.tok)),
        );
        Err(())
    }

    fn expect_sym(&mut self, s: &str) -> PResult<Token> {
        if self.at_sym(s) {
            Ok(self.bump())
        } else {
            self.unexpected(&format!("`{s}`"))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<Token> {
        if self.at_ident(kw) {
            Ok(self.bump())
        } else {
            self.unexpected(&format!("`{kw}`"))
        }
    }

    fn expect_ident(&mut self, what: &str) -> PResult<(String, Token)> {
        match self.peek_tok().clone() {
            Tok::Ident(s) => Ok((s, self.bump())),
            _ => self.unexpected(what),
        }
    }

    /// A name being introduced; reserved words are rejected.
    fn binder(&mut self, what: &str) -> PResult<(String, Token)> {
        let (name, tok) = self.expect_ident(what)?;
        if is_reserved(&name) {
            self.error(
                &tok,
                format!("`{name}` is reserved and cannot be used as a name"),
            );
        }
        Ok((name, tok))
    }

    fn skip_to_decl(&mut self) {
        while self.peek_tok() != &Tok::Eof && !self.at_decl_keyword() {
            self.bump();
        }
    }

    /// Skips the rest of a block item, consuming its `;`.
    fn skip_item(&mut self) {
        loop {
            if self.peek_tok() == &Tok::Eof || self.at_sym("}") || self.at_decl_keyword() {
                return;
            }
            if self.bump().tok == Tok::Sym(";") {
                return;
            }
        }
    }

    fn file(&mut self) {
        while self.peek_tok() != &Tok::Eof {
            if !self.at_decl_keyword() {
                let _: PResult<()> =
                    self.unexpected("a declaration (`liealg`, `confalg`, `map` or `modmap`)");
                self.bump();
                self.skip_to_decl();
                continue;
            }
            if self.decl().is_err() {
                self.skip_to_decl();
            }
        }
    }

    fn decl(&mut self) -> PResult<()> {
        let kw = self.bump();
        let Tok::Ident(kind) = &kw.tok else {
            unreachable!()
        };
        let kind = kind.clone();
        let (name, name_tok) = self.binder("a declaration name")?;
        if self.file.get(&name).is_some() {
            self.error(&name_tok, format!("duplicate name `{name}`"));
        }
        let decl = match kind.as_str() {
            "liealg" => self.liealg(name, &name_tok)?,
            "confalg" => self.confalg(name, &name_tok)?,
            _ => self.map_decl(kind == "modmap", name, &name_tok)?,
        };
        if let Some(decl) = decl {
            if self.file.get(decl.name()).is_none() {
                self.file.declarations.push(decl);
            }
        }
        Ok(())
    }

    fn namelist(&mut self, what: &str) -> PResult<Vec<String>> {
        let mut names: Vec<String> = Vec::new();
        loop {
            let (n, tok) = self.binder(what)?;
            if names.contains(&n) {
                self.error(&tok, format!("duplicate name `{n}`"));
            }
            names.push(n);
            if !self.eat_sym(",") {
                return Ok(names);
            }
        }
    }

    fn generator(&mut self, names: &[String], owner: &str) -> PResult<Option<usize>> {
        let (n, tok) = self.expect_ident("a generator name")?;
        let idx = names.iter().position(|m| *m == n);
        if idx.is_none() {
            self.error(&tok, format!("unknown name `{n}` in `{owner}`"));
        }
        Ok(idx)
    }

    /// Runs `item` until the closing brace, recovering at item boundaries.
    fn block_items(&mut self, mut item: impl FnMut(&mut Self) -> PResult<()>) -> PResult<()> {
        loop {
            if self.eat_sym("}") {
                return Ok(());
            }
            if self.peek_tok() == &Tok::Eof || self.at_decl_keyword() {
                return self.unexpected("`}`");
            }
            if item(self).is_err() {
                self.skip_item();
            }
        }
    }

    fn liealg(&mut self, name: String, name_tok: &Token) -> PResult<Option<Decl>> {
        self.expect_sym("{")?;
        self.expect_keyword("basis")?;
        let basis = self.namelist("a basis element")?;
        self.expect_sym(";")?;
        let n = basis.len();
        let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
        let mut given = BTreeSet::new();
        let errors = self.error_count();
        self.block_items(|p| {
            let open = p.expect_sym("[")?;
            let i = p.generator(&basis, &name)?;
            p.expect_sym(",")?;
            let j = p.generator(&basis, &name)?;
            p.expect_sym("]")?;
            p.expect_sym("=")?;
            let v = p.modexpr(&basis, &name, Ctx::Lie)?;
            p.expect_sym(";")?;
            let (Some(i), Some(j)) = (i, j) else {
                return Ok(());
            };
            if !given.insert((i, j)) {
                p.error(
                    &open,
                    format!("duplicate bracket [{}, {}]", basis[i], basis[j]),
                );
            }
            c[i][j] = v.comps().iter().map(|q| q.constant_term()).collect();
            Ok(())
        })?;
        if self.error_count() > errors {
            return Ok(None);
        }
        for &(i, j) in &given {
            if !given.contains(&(j, i)) {
                c[j][i] = c[i][j].iter().map(|x| -x).collect();
            }
        }
        match LieAlgebra::new(basis, c) {
            Ok(alg) => Ok(Some(Decl::LieAlg { name, alg })),
            Err(e) => {
                self.error(name_tok, format!("`{name}` is not a Lie algebra: {e}"));
                Ok(None)
            }
        }
    }

    fn confalg(&mut self, name: String, name_tok: &Token) -> PResult<Option<Decl>> {
        if self.eat_sym("=") {
            return self.confalg_alias(name);
        }
        self.expect_sym("{")?;
        self.expect_keyword("generators")?;
        let gens = self.namelist("a generator name")?;
        self.expect_sym(";")?;
        let r = gens.len();
        let mut table = vec![vec![M::zero(r); r]; r];
        let mut given = BTreeSet::new();
        let errors = self.error_count();
        self.block_items(|p| {
            let kw = p.expect_keyword("bracket")?;
            p.expect_sym("[")?;
            let i = p.generator(&gens, &name)?;
            p.expect_sym("~")?;
            let j = p.generator(&gens, &name)?;
            p.expect_sym("]")?;
            p.expect_sym("=")?;
            let v = p.modexpr(&gens, &name, Ctx::Bracket)?;
            p.expect_sym(";")?;
            let (Some(i), Some(j)) = (i, j) else {
                return Ok(());
            };
            if !given.insert((i, j)) {
                p.error(
                    &kw,
                    format!("duplicate bracket [{} ~ {}]", gens[i], gens[j]),
                );
            }
            table[i][j] = v;
            Ok(())
        })?;
        if self.error_count() > errors {
            return Ok(None);
        }
        // [b_λ a] = -[a_{-λ-∂} b]
        let flip = -(P::var(Var::Lam) + P::var(Var::D));
        for &(i, j) in &given {
            if !given.contains(&(j, i)) {
                table[j][i] = table[i][j].elem_substitute(Var::Lam, &flip).neg();
            }
        }
        match ConformalAlgebra::new(gens, table) {
            Ok(alg) => Ok(Some(Decl::ConfAlg {
                name,
                def: ConfAlgDef::Table,
                alg,
            })),
            Err(e) => {
                self.error(name_tok, format!("invalid conformal algebra `{name}`: {e}"));
                Ok(None)
            }
        }
    }

    fn confalg_alias(&mut self, name: String) -> PResult<Option<Decl>> {
        if self.at_ident("cur") {
            self.bump();
            self.expect_sym("(")?;
            let (g, tok) = self.expect_ident("a Lie algebra name")?;
            self.expect_sym(")")?;
            self.expect_sym(";")?;
            return Ok(match self.file.lie_algebra(&g) {
                Some(lie) => Some(Decl::ConfAlg {
                    name,
                    alg: ConformalAlgebra::cur(lie),
                    def: ConfAlgDef::Cur(g),
                }),
                None => {
                    self.unknown(&tok, &g, "Lie algebra");
                    None
                }
            });
        }
        let (a, ta) = self.expect_ident("a conformal algebra name or `cur`")?;
        self.expect_sym("(+)")?;
        let (b, tb) = self.expect_ident("a conformal algebra name")?;
        self.expect_sym(";")?;
        let lhs = self.file.conf_algebra(&a).cloned();
        let rhs = self.file.conf_algebra(&b).cloned();
        if lhs.is_none() {
            self.unknown(&ta, &a, "conformal algebra");
        }
        if rhs.is_none() {
            self.unknown(&tb, &b, "conformal algebra");
        }
        Ok(match (lhs, rhs) {
            (Some(x), Some(y)) => Some(Decl::ConfAlg {
                name,
                alg: ConformalAlgebra::direct_sum(&x, &y),
                def: ConfAlgDef::Sum(a, b),
            }),
            _ => None,
        })
    }

    fn unknown(&mut self, tok: &Token, name: &str, what: &str) {
        let msg = match self.file.get(name) {
            Some(d) => format!("`{name}` is a {}, expected a {what}", d.keyword()),
            None => format!("unknown name `{name}`, expected a {what} declared earlier"),
        };
        self.error(tok, msg);
    }

    fn map_decl(&mut self, module: bool, name: String, name_tok: &Token) -> PResult<Option<Decl>> {
        self.expect_sym(":")?;
        let (s, ts) = self.expect_ident("a source algebra")?;
        self.expect_sym("->")?;
        let (t, tt) = self.expect_ident("a target algebra")?;
        let src = self.file.conf_algebra(&s).cloned();
        let tgt = self.file.conf_algebra(&t).cloned();
        if src.is_none() {
            self.unknown(&ts, &s, "conformal algebra");
        }
        if tgt.is_none() {
            self.unknown(&tt, &t, "conformal algebra");
        }
        let (Some(src), Some(tgt)) = (src, tgt) else {
            return Err(());
        };
        let errors = self.error_count();
        if !module && src.rank() != tgt.rank() {
            self.error(
                &tt,
                format!(
                    "rank mismatch: `map` needs source and target of equal rank, `{s}` has {} and `{t}` has {}",
                    src.rank(),
                    tgt.rank()
                ),
            );
        }
        let open = self.expect_sym("{")?;
        let ctx = if module { Ctx::ModMap } else { Ctx::Map };
        let mut cols: Vec<Option<M>> = vec![None; src.rank()];
        self.block_items(|p| {
            let (g, tok) = p.expect_ident("a generator name")?;
            let j = src.index_of(&g);
            if j.is_none() {
                p.error(&tok, format!("unknown name `{g}` in `{s}`"));
            }
            p.expect_sym("|->")?;
            let v = p.modexpr(tgt.names(), &t, ctx)?;
            p.expect_sym(";")?;
            let Some(j) = j else {
                return Ok(());
            };
            if cols[j].is_some() {
                p.error(&tok, format!("duplicate entry for `{g}`"));
            }
            cols[j] = Some(v);
            Ok(())
        })?;
        for (j, c) in cols.iter().enumerate() {
            if c.is_none() {
                self.diag(
                    Severity::Warning,
                    &open,
                    format!(
                        "generator `{}` is not listed in `{name}`; it maps to 0",
                        src.names()[j]
                    ),
                );
            }
        }
        if self.error_count() > errors {
            return Ok(None);
        }
        let cols: Vec<M> = cols
            .into_iter()
            .map(|c| c.unwrap_or_else(|| M::zero(tgt.rank())))
            .collect();
        let built = if module {
            ModuleMap::new(tgt.rank(), cols).map(|map| Decl::ModMap {
                name: name.clone(),
                source: s,
                target: t,
                map,
            })
        } else {
            ConformalMap::new(cols).map(|map| Decl::Map {
                name: name.clone(),
                source: s,
                target: t,
                map,
            })
        };
        match built {
            Ok(d) => Ok(Some(d)),
            Err(e) => {
                self.error(name_tok, format!("invalid map `{name}`: {e}"));
                Ok(None)
            }
        }
    }

    /// `[-] term (("+" | "-") term)*` where a term is a polynomial
    /// coefficient followed by a generator name, or a bare `0`.
    fn modexpr(&mut self, gens: &[String], owner: &str, ctx: Ctx) -> PResult<M> {
        let r = gens.len();
        let mut acc = M::zero(r);
        let mut neg = self.eat_sym("-");
        loop {
            let (coeff, gen) = self.term(gens, owner, ctx)?;
            if let Some(i) = gen {
                let coeff = if neg { -coeff } else { coeff };
                acc.add_assign(&M::monomial(r, i, coeff));
            }
            if self.eat_sym("+") {
                neg = false;
            } else if self.eat_sym("-") {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        match self.peek_tok() {
            Tok::Int(_) => true,
            Tok::Sym("(") => true,
            Tok::Ident(s) => Var::from_name(s).is_some(),
            _ => false,
        }
    }

    fn term(&mut self, gens: &[String], owner: &str, ctx: Ctx) -> PResult<(P, Option<usize>)> {
        let mut coeff = P::one();
        let mut any = false;
        while self.starts_factor() {
            let f = self.factor(ctx)?;
            coeff = &coeff * &f;
            any = true;
            self.eat_sym("*");
        }
        match self.peek_tok() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                Ok((coeff, self.generator(gens, owner)?))
            }
            _ if any && coeff.is_zero() => Ok((coeff, None)),
            _ => self.unexpected("a generator name"),
        }
    }

    fn factor(&mut self, ctx: Ctx) -> PResult<P> {
        let tok = self.peek().clone();
        let base = match &tok.tok {
            Tok::Int(n) => {
                self.bump();
                let mut q = Rational::from_integer(n.clone());
                if self.eat_sym("/") {
                    let dt = self.peek().clone();
                    let Tok::Int(d) = dt.tok.clone() else {
                        return self.unexpected("an integer denominator");
                    };
                    self.bump();
                    if d.is_zero() {
                        self.error(&dt, "division by zero");
                    } else {
                        q /= Rational::from_integer(d);
                    }
                }
                P::constant(q)
            }
            Tok::Ident(s) if Var::from_name(s).is_some() => {
                let v = Var::from_name(s).expect("guarded");
                self.bump();
                if let Some(msg) = ctx.check(v) {
                    self.error(&tok, msg);
                }
                P::var(v)
            }
            Tok::Sym("(") => {
                self.bump();
                let p = self.poly(ctx)?;
                self.expect_sym(")")?;
                p
            }
            _ => return self.unexpected("a number, a variable or `(`"),
        };
        if self.eat_sym("^") {
            let et = self.peek().clone();
            let Tok::Int(e) = et.tok.clone() else {
                return self.unexpected("an integer exponent");
            };
            self.bump();
            return match e.to_u32().filter(|&e| e <= MAX_EXPONENT) {
                Some(e) => Ok(base.pow(e)),
                None => {
                    self.error(&et, format!("exponent must be at most {MAX_EXPONENT}"));
                    Ok(base)
                }
            };
        }
        Ok(base)
    }

    fn poly(&mut self, ctx: Ctx) -> PResult<P> {
        let mut acc = P::zero();
        let mut neg = self.eat_sym("-");
        loop {
            let mut t = self.factor(ctx)?;
            loop {
                if self.eat_sym("*") || self.starts_factor() {
                    t = &t * &self.factor(ctx)?;
                } else {
                    break;
                }
            }
            if neg {
                acc -= &t;
            } else {
                acc += &t;
            }
            if self.eat_sym("+") {
                neg = false;
            } else if self.eat_sym("-") {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }
}
