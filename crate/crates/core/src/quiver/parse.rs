//! Parser for the line-oriented presentation format.
//!
//! ```text
//! field Q                      # or: field F 7
//! vertices 1 2
//! arrow a : 1 -> 2 deg 1
//! relation 2*b*a - c*d         # b*a means a then b
//! nilpotency_bound 4
//! ```

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::quiver::model::{Arrow, Presentation, Quiver, RelationExpr};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Name(String),
    Int(BigInt),
    Star,
    Plus,
    Minus,
    Slash,
    Colon,
    To,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    text: String,
    column: usize,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '.'
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '*' => Some(Tok::Star),
            '+' => Some(Tok::Plus),
            '-' if chars.get(i + 1) == Some(&'>') => None,
            '-' | '−' => Some(Tok::Minus),
            '/' => Some(Tok::Slash),
            ':' => Some(Tok::Colon),
            '→' => Some(Tok::To),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token {
                tok,
                text: c.to_string(),
                column,
            });
            i += 1;
            continue;
        }
        if c == '-' {
            out.push(Token {
                tok: Tok::To,
                text: "->".into(),
                column,
            });
            i += 2;
            continue;
        }
        if is_name_char(c) {
            let start = i;
            while i < chars.len() && is_name_char(chars[i]) {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let tok = if text.chars().all(|c| c.is_ascii_digit()) {
                Tok::Int(text.parse().expect("digits"))
            } else {
                Tok::Name(text.clone())
            };
            out.push(Token { tok, text, column });
            continue;
        }
        return Err(Error::Syntax {
            line: line_no,
            column,
            message: format!("unexpected character `{c}`"),
        });
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Token], line: usize, line_len: usize) -> Self {
        Cursor {
            toks,
            pos: 0,
            line,
            end_column: line_len + 1,
        }
    }

    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn column(&self) -> usize {
        self.peek().map_or(self.end_column, |t| t.column)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        match self.peek() {
            Some(t) if t.tok == tok => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    /// Vertex names may be numeric.
    fn vertex_name(&mut self) -> Result<&'a Token> {
        match self.peek() {
            Some(t) if matches!(t.tok, Tok::Name(_) | Tok::Int(_)) => {
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.error("expected a vertex name")),
        }
    }

    fn name(&mut self, what: &str) -> Result<&'a Token> {
        match self.peek() {
            Some(t) if matches!(t.tok, Tok::Name(_)) => {
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn int(&mut self, what: &str) -> Result<BigInt> {
        match self.peek() {
            Some(Token { tok: Tok::Int(n), .. }) => {
                self.pos += 1;
                Ok(n.clone())
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(Error::Syntax {
                line: self.line,
                column: t.column,
                message: format!("unexpected `{}`", t.text),
            }),
        }
    }
}

fn small_int(n: &BigInt, line: usize, column: usize, what: &str) -> Result<u64> {
    u64::try_from(n).map_err(|_| Error::Syntax {
        line,
        column,
        message: format!("{what} out of range"),
    })
}

struct RawArrow {
    line: usize,
    name: String,
    source: (String, usize),
    target: (String, usize),
    degree: Option<u32>,
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut field: Option<(Field, usize)> = None;
    let mut vertices: Vec<(String, usize)> = Vec::new();
    let mut arrows: Vec<RawArrow> = Vec::new();
    let mut relations: Vec<(usize, usize, Vec<Token>)> = Vec::new();
    let mut bound: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokenize(raw, line)?;
        let len = raw.chars().count();
        let mut cur = Cursor::new(&toks, line, len);
        let Some(head) = cur.next() else { continue };
        let keyword = match &head.tok {
            Tok::Name(k) => k.as_str(),
            _ => {
                return Err(Error::Syntax {
                    line,
                    column: head.column,
                    message: "expected a declaration keyword".into(),
                })
            }
        };
        match keyword {
            "field" => {
                if field.is_some() {
                    return Err(cur.error("field declared twice"));
                }
                let t = cur.name("`Q` or `F <prime>`")?;
                let f = match t.text.as_str() {
                    "Q" => Field::Rational,
                    "F" => {
                        let column = cur.column();
                        let p = cur.int("a prime modulus")?;
                        let p = small_int(&p, line, column, "modulus")?;
                        Field::prime(p).map_err(|e| Error::Syntax {
                            line,
                            column,
                            message: e.to_string(),
                        })?
                    }
                    other => {
                        return Err(Error::Syntax {
                            line,
                            column: t.column,
                            message: format!("unknown field `{other}`"),
                        })
                    }
                };
                cur.finish()?;
                field = Some((f, line));
            }
            "vertices" => {
                if cur.peek().is_none() {
                    return Err(cur.error("expected at least one vertex name"));
                }
                while cur.peek().is_some() {
                    let t = cur.vertex_name()?;
                    vertices.push((t.text.clone(), line));
                }
            }
            "arrow" => {
                let name = cur.name("an arrow name")?.text.clone();
                cur.expect(Tok::Colon, "`:`")?;
                let s = cur.vertex_name()?;
                cur.expect(Tok::To, "`->`")?;
                let t = cur.vertex_name()?;
                let degree = match cur.peek() {
                    Some(Token { tok: Tok::Name(k), .. }) if k == "deg" => {
                        cur.next();
                        let column = cur.column();
                        let d = cur.int("a degree")?;
                        let d = small_int(&d, line, column, "degree")?;
                        if d == 0 || d > u32::MAX as u64 {
                            return Err(Error::Syntax {
                                line,
                                column,
                                message: "degrees must be positive".into(),
                            });
                        }
                        Some(d as u32)
                    }
                    _ => None,
                };
                cur.finish()?;
                arrows.push(RawArrow {
                    line,
                    name,
                    source: (s.text.clone(), s.column),
                    target: (t.text.clone(), t.column),
                    degree,
                });
            }
            "relation" => {
                relations.push((line, len, toks[1..].to_vec()));
            }
            "nilpotency_bound" => {
                let column = cur.column();
                let n = cur.int("a positive integer")?;
                let n = small_int(&n, line, column, "bound")?;
                if n == 0 {
                    return Err(Error::Syntax {
                        line,
                        column,
                        message: "nilpotency bound must be positive".into(),
                    });
                }
                cur.finish()?;
                bound = Some(n as usize);
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    column: head.column,
                    message: format!("unknown declaration `{other}`"),
                })
            }
        }
    }

    let field = field.map_or(Field::Rational, |(f, _)| f);
    let mut names = Vec::new();
    for (v, line) in &vertices {
        if names.contains(v) {
            return Err(Error::DuplicateName {
                line: *line,
                kind: "vertex",
                name: v.clone(),
            });
        }
        names.push(v.clone());
    }
    let mut quiver_arrows: Vec<Arrow> = Vec::new();
    for a in &arrows {
        let find = |(name, _): &(String, usize)| {
            names.iter().position(|v| v == name).ok_or_else(|| Error::UnknownName {
                line: a.line,
                kind: "vertex",
                name: name.clone(),
            })
        };
        if quiver_arrows.iter().any(|b| b.name == a.name) {
            return Err(Error::DuplicateName {
                line: a.line,
                kind: "arrow",
                name: a.name.clone(),
            });
        }
        quiver_arrows.push(Arrow {
            name: a.name.clone(),
            source: find(&a.source)?,
            target: find(&a.target)?,
            degree: a.degree,
        });
    }
    let quiver = Quiver::new(names, quiver_arrows)?;

    let mut rels = Vec::new();
    for (line, len, toks) in &relations {
        let rel = parse_relation(&quiver, field, toks, *line, *len)?;
        rel.validate(&quiver, *line)?;
        rels.push(rel);
    }
    Presentation::new(quiver, field, rels, bound)
}

fn parse_relation(q: &Quiver, field: Field, toks: &[Token], line: usize, len: usize) -> Result<RelationExpr> {
    let mut cur = Cursor::new(toks, line, len);
    if cur.peek().is_none() {
        return Err(cur.error("expected a relation expression"));
    }
    let mut terms = Vec::new();
    let mut negative = false;
    if let Some(Token { tok: Tok::Minus, .. }) = cur.peek() {
        cur.next();
        negative = true;
    }
    loop {
        let term_column = cur.column();
        let mut coeff = field.one();
        if let Some(Token { tok: Tok::Int(_), .. }) = cur.peek() {
            let num = cur.int("a coefficient")?;
            let den = if let Some(Token { tok: Tok::Slash, .. }) = cur.peek() {
                cur.next();
                cur.int("a denominator")?
            } else {
                BigInt::from(1)
            };
            coeff = field.from_ratio(&num, &den).map_err(|e| Error::Syntax {
                line,
                column: term_column,
                message: e.to_string(),
            })?;
            cur.expect(Tok::Star, "`*` after the coefficient")?;
        }
        let mut written = Vec::new();
        loop {
            let t = cur.name("an arrow name")?;
            let idx = q.arrow_index(&t.text).ok_or_else(|| Error::UnknownName {
                line,
                kind: "arrow",
                name: t.text.clone(),
            })?;
            written.push(idx);
            match cur.peek() {
                Some(Token { tok: Tok::Star, .. }) => {
                    cur.next();
                }
                _ => break,
            }
        }
        written.reverse();
        let path = q.path_from_traversal(written).map_err(|e| Error::Syntax {
            line,
            column: term_column,
            message: e.to_string(),
        })?;
        if negative {
            coeff = -coeff;
        }
        terms.push((coeff, path));
        match cur.next() {
            None => break,
            Some(Token { tok: Tok::Plus, .. }) => negative = false,
            Some(Token { tok: Tok::Minus, .. }) => negative = true,
            Some(t) => {
                return Err(Error::Syntax {
                    line,
                    column: t.column,
                    message: format!("expected `+` or `-`, found `{}`", t.text),
                })
            }
        }
    }
    Ok(RelationExpr { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Scalar;
    use proptest::prelude::*;

    pub(crate) const FIVE_VERTEX: &str = "\
field Q
vertices 1 2 3 4 5
arrow α : 1 -> 2 deg 3
arrow β : 2 -> 3 deg 3
arrow γ : 1 -> 4 deg 2
arrow δ : 4 -> 5 deg 2
arrow ε : 5 -> 3 deg 2
relation ε*δ*γ − β*α
";

    #[test]
    fn single_vertex() {
        let p = parse_presentation("field Q\nvertices v\n").unwrap();
        assert_eq!(p.quiver.vertex_count(), 1);
        assert!(p.quiver.arrows().is_empty());
        assert!(p.relations.is_empty());
    }

    #[test]
    fn five_vertex_example() {
        let p = parse_presentation(FIVE_VERTEX).unwrap();
        assert_eq!(p.quiver.vertex_count(), 5);
        assert_eq!(p.quiver.arrows().len(), 5);
        assert_eq!(p.relations.len(), 1);
        let r = &p.relations[0];
        assert_eq!(r.terms.len(), 2);
        assert_eq!(r.terms[0].1.arrows, vec![2, 3, 4]);
        assert_eq!(r.terms[1].0, Field::Rational.from_i64(-1));
        assert!(p.quiver.is_graded());
    }

    #[test]
    fn admissibility_violation() {
        let text = "field Q\nvertices 1 2 3\narrow α : 1 -> 2\narrow β : 2 -> 3\narrow γ : 1 -> 3\nrelation β*α - γ\n";
        let err = parse_presentation(text).unwrap_err();
        assert!(matches!(err, Error::Admissibility { line: 6, length: 1, .. }), "{err}");
    }

    #[test]
    fn diagnostics_carry_positions() {
        let err = parse_presentation("field Q\nvertices 1\narrow a : 1 => 1\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, column: 13, .. }), "{err}");
        let err = parse_presentation("field Q\nvertices 1\narrow a : 1 -> 2\n").unwrap_err();
        assert!(matches!(err, Error::UnknownName { line: 3, kind: "vertex", .. }));
        let err = parse_presentation("vertices 1\narrow a : 1 -> 1\nrelation a*b\n").unwrap_err();
        assert!(matches!(err, Error::UnknownName { line: 3, kind: "arrow", .. }));
    }

    #[test]
    fn non_parallel_and_duplicates() {
        let base = "vertices 1 2\narrow a : 1 -> 2\narrow b : 2 -> 1\n";
        let err = parse_presentation(&format!("{base}relation b*a + a*b\n")).unwrap_err();
        assert!(matches!(err, Error::NonParallel { .. }));
        let err = parse_presentation(&format!("{base}relation b*a - 2*b*a\n")).unwrap_err();
        assert!(matches!(err, Error::DuplicateTerm { .. }));
        let err = parse_presentation(&format!("{base}relation a*a\n")).unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 4, .. }));
    }

    #[test]
    fn partial_degrees_rejected() {
        let err = parse_presentation("vertices 1\narrow x : 1 -> 1 deg 2\narrow y : 1 -> 1\n").unwrap_err();
        assert!(matches!(err, Error::PartialDegrees { .. }));
    }

    #[test]
    fn prime_fields_and_fractions() {
        let p = parse_presentation("field F 7\nvertices v\narrow x : v -> v\nrelation 3/2*x*x\n").unwrap();
        // 3/2 = 3 * 4 = 12 = 5 mod 7
        assert_eq!(p.relations[0].terms[0].0, Scalar::Residue { value: 5, modulus: 7 });
        assert!(parse_presentation("field F 8\n").is_err());
        assert!(parse_presentation("field F 7\nvertices v\narrow x : v -> v\nrelation 7*x*x\n").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse_presentation("# dual numbers\n\nfield Q   # rationals\nvertices v\narrow x : v -> v\nrelation x*x # square zero\nnilpotency_bound 3\n").unwrap();
        assert_eq!(p.nilpotency_bound, Some(3));
    }

    #[test]
    fn round_trip_five_vertex() {
        let p = parse_presentation(FIVE_VERTEX).unwrap();
        let again = parse_presentation(&p.to_string()).unwrap();
        assert_eq!(p, again);
    }

    fn presentation() -> impl Strategy<Value = String> {
        // loops on one vertex plus a 2-cycle, with random relations
        let coeff = prop_oneof![Just("".to_string()), (1i64..5, 1i64..4).prop_map(|(n, d)| format!("{n}/{d}*"))];
        let word = proptest::collection::vec(prop_oneof![Just("x"), Just("y")], 2..4).prop_map(|w| w.join("*"));
        let term = (coeff, word);
        let rel = proptest::collection::vec(term, 1..4);
        (proptest::collection::vec(rel, 0..3), prop::option::of(2usize..6)).prop_map(|(rels, bound)| {
            let mut s = String::from("field Q\nvertices v\narrow x : v -> v\narrow y : v -> v\n");
            for r in rels {
                let mut seen = std::collections::HashSet::new();
                let parts: Vec<String> = r
                    .into_iter()
                    .filter(|(_, w)| seen.insert(w.clone()))
                    .map(|(c, w)| format!("{c}{w}"))
                    .collect();
                s.push_str(&format!("relation {}\n", parts.join(" - ")));
            }
            if let Some(b) = bound {
                s.push_str(&format!("nilpotency_bound {b}\n"));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn serialize_then_parse_is_identity(text in presentation()) {
            let p = parse_presentation(&text).unwrap();
            let again = parse_presentation(&p.to_string()).unwrap();
            prop_assert_eq!(&p, &again);
            prop_assert_eq!(p.to_string(), again.to_string());
        }
    }
}
