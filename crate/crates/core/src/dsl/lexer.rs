use num_bigint::BigInt;

use super::{Diagnostic, Severity};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
    pub len: usize,
}

// longest first
const SYMBOLS: [&str; 19] = [
    "|->", "(+)", "->", "{", "}", "(", ")", "[", "]", ";", ",", "~", "=", "+", "-", "*", "/", "^",
    ":",
];

pub(crate) fn lex(src: &str, diags: &mut Vec<Diagnostic>) -> Vec<Token> {
    let mut out = Vec::new();
    let mut last = (1, 1);
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let lno = li + 1;
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            if c.is_ascii_alphabetic() || c == '_' {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(token(Tok::Ident(s), lno, start, i - start));
                continue;
            }
            if c.is_ascii_digit() {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    diags.push(Diagnostic::at(
                        Severity::Error,
                        "floating point literals are not allowed; write a fraction such as 3/2",
                        src,
                        lno,
                        start + 1,
                        i - start,
                    ));
                    continue;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(token(
                    Tok::Int(s.parse().expect("digits")),
                    lno,
                    start,
                    i - start,
                ));
                continue;
            }
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            if let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                let n = sym.chars().count();
                out.push(token(Tok::Sym(sym), lno, start, n));
                i += n;
                continue;
            }
            diags.push(Diagnostic::at(
                Severity::Error,
                format!("unexpected character `{c}`"),
                src,
                lno,
                start + 1,
                1,
            ));
            i += 1;
        }
        last = (lno, chars.len() + 1);
    }
    out.push(Token {
        tok: Tok::Eof,
        line: last.0,
        col: last.1,
        len: 1,
    });
    out
}

fn token(tok: Tok, line: usize, start: usize, len: usize) -> Token {
    Token {
        tok,
        line,
        col: start + 1,
        len,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<Tok> {
        let mut d = Vec::new();
        let toks = lex(src, &mut d);
        assert!(d.is_empty(), "{d:?}");
        toks.into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn symbols_and_comments() {
        assert_eq!(
            kinds("e |-> (D+x) e; # note\nA (+) B"),
            vec![
                Tok::Ident("e".into()),
                Tok::Sym("|->"),
                Tok::Sym("("),
                Tok::Ident("D".into()),
                Tok::Sym("+"),
                Tok::Ident("x".into()),
                Tok::Sym(")"),
                Tok::Ident("e".into()),
                Tok::Sym(";"),
                Tok::Ident("A".into()),
                Tok::Sym("(+)"),
                Tok::Ident("B".into()),
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn positions_are_one_based() {
        let mut d = Vec::new();
        let toks = lex("  ab\n 12", &mut d);
        assert_eq!((toks[0].line, toks[0].col, toks[0].len), (1, 3, 2));
        assert_eq!((toks[1].line, toks[1].col), (2, 2));
    }

    #[test]
    fn floats_and_junk_are_reported() {
        let mut d = Vec::new();
        lex("1.5 @", &mut d);
        assert_eq!(d.len(), 2);
        assert_eq!((d[0].line, d[0].column), (1, 1));
        assert_eq!((d[1].line, d[1].column), (1, 5));
    }
}
