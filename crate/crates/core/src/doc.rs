//! The text format: documents bundling named monographs, morphisms,
//! rules, signatures and algebras.
//!
//! The grammar uses `#` line comments and five item kinds:
//!
//! ```text
//! monograph A { x: x y x; n: ; }
//! morphism f : A -> B { x -> y; }
//! rule r { left: l; right: r2; }
//! signature S { sorts s t; op f: s -> t; }
//! algebra C : S { carrier s = a b; op f(a) = u; }
//! ```
//!
//! Names are bare identifiers (letters, digits, `_`, `'`, `.`, `@`) or
//! double-quoted strings for anything else, e.g. the pair edges
//! `"(x,y)"` produced by products. Serialization is canonical: items
//! sorted by kind then name, one entry per line, so serializing a
//! parsed document and parsing it back are both identities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{EdgeId, Monograph};
use crate::morphism::Morphism;
use crate::rewriting::SpanRule;
use crate::signature::{Algebra, Operator, Signature};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{kind} `{name}` is referenced by `{referenced_by}` but never declared")]
    Unresolved {
        kind: &'static str,
        name: String,
        referenced_by: String,
    },
    #[error("{kind} `{name}` is declared twice")]
    Duplicate { kind: &'static str, name: String },
    #[error("invalid {kind} `{name}`: {message}")]
    Invalid {
        kind: &'static str,
        name: String,
        message: String,
    },
}

/// A morphism declaration by reference: the monographs live elsewhere
/// in the document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocMorphism {
    pub dom: String,
    pub cod: String,
    pub map: BTreeMap<String, String>,
}

/// A rule declaration referencing two morphisms with a shared domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocRule {
    pub left: String,
    pub right: String,
}

/// An algebra declaration referencing its signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocAlgebra {
    pub sig: String,
    pub carriers: BTreeMap<String, BTreeSet<String>>,
    pub interps: BTreeMap<String, BTreeMap<Vec<String>, String>>,
}

/// A parsed bundle of named items. All cross-references resolve and all
/// payloads pass their validators once [`Document::parse`] returns.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub monographs: BTreeMap<String, Monograph>,
    pub morphisms: BTreeMap<String, DocMorphism>,
    pub rules: BTreeMap<String, DocRule>,
    pub signatures: BTreeMap<String, Signature>,
    pub algebras: BTreeMap<String, DocAlgebra>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, DocError> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, pos: 0 };
        let doc = p.document()?;
        doc.validate()?;
        Ok(doc)
    }

    /// Re-checks every payload and cross-reference.
    pub fn validate(&self) -> Result<(), DocError> {
        for name in self.morphisms.keys() {
            self.morphism(name)?;
        }
        for name in self.rules.keys() {
            self.rule(name)?;
        }
        for name in self.algebras.keys() {
            self.algebra(name)?;
        }
        Ok(())
    }

    pub fn monograph(&self, name: &str) -> Result<&Monograph, DocError> {
        self.monographs
            .get(name)
            .ok_or_else(|| DocError::Unresolved {
                kind: "monograph",
                name: name.to_string(),
                referenced_by: name.to_string(),
            })
    }

    pub fn morphism(&self, name: &str) -> Result<Morphism, DocError> {
        let decl = self
            .morphisms
            .get(name)
            .ok_or_else(|| DocError::Unresolved {
                kind: "morphism",
                name: name.to_string(),
                referenced_by: name.to_string(),
            })?;
        let resolve = |target: &str| {
            self.monographs
                .get(target)
                .cloned()
                .ok_or_else(|| DocError::Unresolved {
                    kind: "monograph",
                    name: target.to_string(),
                    referenced_by: name.to_string(),
                })
        };
        let dom = resolve(&decl.dom)?;
        let cod = resolve(&decl.cod)?;
        let map = decl
            .map
            .iter()
            .map(|(k, v)| (EdgeId::from(k.as_str()), EdgeId::from(v.as_str())))
            .collect();
        Morphism::new(dom, cod, map).map_err(|e| DocError::Invalid {
            kind: "morphism",
            name: name.to_string(),
            message: e.to_string(),
        })
    }

    pub fn rule(&self, name: &str) -> Result<SpanRule, DocError> {
        let decl = self.rules.get(name).ok_or_else(|| DocError::Unresolved {
            kind: "rule",
            name: name.to_string(),
            referenced_by: name.to_string(),
        })?;
        let left = self.morphism(&decl.left)?;
        let right = self.morphism(&decl.right)?;
        SpanRule::new(name, left, right).map_err(|e| DocError::Invalid {
            kind: "rule",
            name: name.to_string(),
            message: e.to_string(),
        })
    }

    pub fn signature(&self, name: &str) -> Result<&Signature, DocError> {
        self.signatures
            .get(name)
            .ok_or_else(|| DocError::Unresolved {
                kind: "signature",
                name: name.to_string(),
                referenced_by: name.to_string(),
            })
    }

    pub fn algebra(&self, name: &str) -> Result<Algebra, DocError> {
        let decl = self
            .algebras
            .get(name)
            .ok_or_else(|| DocError::Unresolved {
                kind: "algebra",
                name: name.to_string(),
                referenced_by: name.to_string(),
            })?;
        let sig = self
            .signatures
            .get(&decl.sig)
            .cloned()
            .ok_or_else(|| DocError::Unresolved {
                kind: "signature",
                name: decl.sig.clone(),
                referenced_by: name.to_string(),
            })?;
        Algebra::new(sig, decl.carriers.clone(), decl.interps.clone()).map_err(|e| {
            DocError::Invalid {
                kind: "algebra",
                name: name.to_string(),
                message: e.to_string(),
            }
        })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (name, m) in &self.monographs {
            let _ = writeln!(out, "monograph {} {{", quote(name));
            for (e, seq) in m.iter() {
                let _ = write!(out, "  {}:", quote(e.as_str()));
                for t in seq {
                    let _ = write!(out, " {}", quote(t.as_str()));
                }
                out.push_str(";\n");
            }
            out.push_str("}\n");
        }
        for (name, f) in &self.morphisms {
            let _ = writeln!(
                out,
                "morphism {} : {} -> {} {{",
                quote(name),
                quote(&f.dom),
                quote(&f.cod)
            );
            for (k, v) in &f.map {
                let _ = writeln!(out, "  {} -> {};", quote(k), quote(v));
            }
            out.push_str("}\n");
        }
        for (name, r) in &self.rules {
            let _ = writeln!(out, "rule {} {{", quote(name));
            let _ = writeln!(out, "  left: {};", quote(&r.left));
            let _ = writeln!(out, "  right: {};", quote(&r.right));
            out.push_str("}\n");
        }
        for (name, sig) in &self.signatures {
            let _ = writeln!(out, "signature {} {{", quote(name));
            let _ = write!(out, "  sorts");
            for s in sig.sorts() {
                let _ = write!(out, " {}", quote(s));
            }
            out.push_str(";\n");
            for op in sig.operators() {
                let _ = write!(out, "  op {}:", quote(&op.name));
                for s in &op.dom {
                    let _ = write!(out, " {}", quote(s));
                }
                let _ = writeln!(out, " -> {};", quote(&op.rng));
            }
            out.push_str("}\n");
        }
        for (name, a) in &self.algebras {
            let _ = writeln!(out, "algebra {} : {} {{", quote(name), quote(&a.sig));
            for (s, c) in &a.carriers {
                let _ = write!(out, "  carrier {} =", quote(s));
                for x in c {
                    let _ = write!(out, " {}", quote(x));
                }
                out.push_str(";\n");
            }
            for (op, table) in &a.interps {
                for (args, v) in table {
                    let _ = write!(out, "  op {}(", quote(op));
                    for (i, x) in args.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        let _ = write!(out, "{}", quote(x));
                    }
                    let _ = writeln!(out, ") = {};", quote(v));
                }
            }
            out.push_str("}\n");
        }
        out
    }
}

fn is_bare(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '.' | '@'))
}

fn quote(s: &str) -> String {
    if is_bare(s) {
        s.to_string()
    } else {
        let escaped: String = s
            .chars()
            .flat_map(|c| match c {
                '"' | '\\' => vec!['\\', c],
                _ => vec![c],
            })
            .collect();
        format!("\"{}\"", escaped)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Arrow,
    Punct(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, DocError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let bump = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match c {
            '#' => {
                while let Some(&c2) = chars.peek() {
                    chars.next();
                    bump(c2, &mut line, &mut col);
                    if c2 == '\n' {
                        break;
                    }
                }
            }
            c if c.is_whitespace() => {
                chars.next();
                bump(c, &mut line, &mut col);
            }
            '{' | '}' | ';' | ':' | '=' | '(' | ')' | ',' => {
                chars.next();
                bump(c, &mut line, &mut col);
                tokens.push(Token {
                    tok: Tok::Punct(c),
                    line: tl,
                    col: tc,
                });
            }
            '-' => {
                chars.next();
                bump('-', &mut line, &mut col);
                match chars.peek() {
                    Some('>') => {
                        chars.next();
                        bump('>', &mut line, &mut col);
                        tokens.push(Token {
                            tok: Tok::Arrow,
                            line: tl,
                            col: tc,
                        });
                    }
                    _ => {
                        return Err(DocError::Syntax {
                            line: tl,
                            col: tc,
                            msg: "expected `->`".into(),
                        })
                    }
                }
            }
            '"' => {
                chars.next();
                bump('"', &mut line, &mut col);
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None => {
                            return Err(DocError::Syntax {
                                line: tl,
                                col: tc,
                                msg: "unterminated string".into(),
                            })
                        }
                        Some('"') => {
                            bump('"', &mut line, &mut col);
                            break;
                        }
                        Some('\\') => {
                            bump('\\', &mut line, &mut col);
                            match chars.next() {
                                Some(e @ ('"' | '\\')) => {
                                    bump(e, &mut line, &mut col);
                                    s.push(e);
                                }
                                _ => {
                                    return Err(DocError::Syntax {
                                        line,
                                        col,
                                        msg: "bad escape in string".into(),
                                    })
                                }
                            }
                        }
                        Some(c2) => {
                            bump(c2, &mut line, &mut col);
                            s.push(c2);
                        }
                    }
                }
                tokens.push(Token {
                    tok: Tok::Name(s),
                    line: tl,
                    col: tc,
                });
            }
            c if is_bare(&c.to_string()) => {
                let mut s = String::new();
                while let Some(&c2) = chars.peek() {
                    if is_bare(&c2.to_string()) {
                        chars.next();
                        bump(c2, &mut line, &mut col);
                        s.push(c2);
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    tok: Tok::Name(s),
                    line: tl,
                    col: tc,
                });
            }
            other => {
                return Err(DocError::Syntax {
                    line: tl,
                    col: tc,
                    msg: format!("unexpected character `{}`", other),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err_here(&self, msg: impl Into<String>) -> DocError {
        let (line, col) = self.peek().map(|t| (t.line, t.col)).unwrap_or_else(|| {
            self.tokens
                .last()
                .map(|t| (t.line, t.col + 1))
                .unwrap_or((1, 1))
        });
        DocError::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_punct(&mut self, c: char) -> Result<(), DocError> {
        match self.next() {
            Some(Token {
                tok: Tok::Punct(p), ..
            }) if p == c => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err_here(format!("expected `{}`", c)))
            }
        }
    }

    fn expect_arrow(&mut self) -> Result<(), DocError> {
        match self.next() {
            Some(Token {
                tok: Tok::Arrow, ..
            }) => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err_here("expected `->`"))
            }
        }
    }

    fn name(&mut self) -> Result<String, DocError> {
        match self.next() {
            Some(Token {
                tok: Tok::Name(s), ..
            }) => Ok(s),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err_here("expected a name"))
            }
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), DocError> {
        match self.next() {
            Some(Token {
                tok: Tok::Name(s), ..
            }) if s == kw => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err_here(format!("expected `{}`", kw)))
            }
        }
    }

    fn at_punct(&self, c: char) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Punct(p), .. }) if *p == c)
    }

    fn at_name(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Name(n), .. }) if n == s)
    }

    fn document(&mut self) -> Result<Document, DocError> {
        let mut doc = Document::default();
        while let Some(tok) = self.peek() {
            let kind = match &tok.tok {
                Tok::Name(s) => s.clone(),
                _ => return Err(self.err_here("expected an item keyword")),
            };
            match kind.as_str() {
                "monograph" => self.monograph_item(&mut doc)?,
                "morphism" => self.morphism_item(&mut doc)?,
                "rule" => self.rule_item(&mut doc)?,
                "signature" => self.signature_item(&mut doc)?,
                "algebra" => self.algebra_item(&mut doc)?,
                _ => {
                    return Err(self.err_here(
                        "expected `monograph`, `morphism`, `rule`, `signature` or `algebra`",
                    ))
                }
            }
        }
        Ok(doc)
    }

    fn monograph_item(&mut self, doc: &mut Document) -> Result<(), DocError> {
        let head = self.next().unwrap();
        let name = self.name()?;
        self.expect_punct('{')?;
        let mut raw: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
        while !self.at_punct('}') {
            let edge = self.name()?;
            self.expect_punct(':')?;
            let mut seq = Vec::new();
            while !self.at_punct(';') {
                seq.push(EdgeId::from(self.name()?.as_str()));
            }
            self.expect_punct(';')?;
            if raw.insert(EdgeId::from(edge.as_str()), seq).is_some() {
                return Err(DocError::Invalid {
                    kind: "monograph",
                    name: name.clone(),
                    message: format!("edge `{}` is declared twice", edge),
                });
            }
        }
        self.expect_punct('}')?;
        let m = Monograph::validate(raw).map_err(|e| DocError::Invalid {
            kind: "monograph",
            name: name.clone(),
            message: e.to_string(),
        })?;
        let _ = head;
        if doc.monographs.insert(name.clone(), m).is_some() {
            return Err(DocError::Duplicate {
                kind: "monograph",
                name,
            });
        }
        Ok(())
    }

    fn morphism_item(&mut self, doc: &mut Document) -> Result<(), DocError> {
        self.next();
        let name = self.name()?;
        self.expect_punct(':')?;
        let dom = self.name()?;
        self.expect_arrow()?;
        let cod = self.name()?;
        self.expect_punct('{')?;
        let mut map = BTreeMap::new();
        while !self.at_punct('}') {
            let k = self.name()?;
            self.expect_arrow()?;
            let v = self.name()?;
            self.expect_punct(';')?;
            map.insert(k, v);
        }
        self.expect_punct('}')?;
        if doc
            .morphisms
            .insert(name.clone(), DocMorphism { dom, cod, map })
            .is_some()
        {
            return Err(DocError::Duplicate {
                kind: "morphism",
                name,
            });
        }
        Ok(())
    }

    fn rule_item(&mut self, doc: &mut Document) -> Result<(), DocError> {
        self.next();
        let name = self.name()?;
        self.expect_punct('{')?;
        self.keyword("left")?;
        self.expect_punct(':')?;
        let left = self.name()?;
        self.expect_punct(';')?;
        self.keyword("right")?;
        self.expect_punct(':')?;
        let right = self.name()?;
        self.expect_punct(';')?;
        self.expect_punct('}')?;
        if doc
            .rules
            .insert(name.clone(), DocRule { left, right })
            .is_some()
        {
            return Err(DocError::Duplicate { kind: "rule", name });
        }
        Ok(())
    }

    fn signature_item(&mut self, doc: &mut Document) -> Result<(), DocError> {
        self.next();
        let name = self.name()?;
        self.expect_punct('{')?;
        let mut sorts = BTreeSet::new();
        let mut ops = Vec::new();
        while !self.at_punct('}') {
            if self.at_name("sorts") {
                self.next();
                while !self.at_punct(';') {
                    sorts.insert(self.name()?);
                }
                self.expect_punct(';')?;
            } else if self.at_name("op") {
                self.next();
                let op = self.name()?;
                self.expect_punct(':')?;
                let mut dom = Vec::new();
                while !matches!(
                    self.peek(),
                    Some(Token {
                        tok: Tok::Arrow,
                        ..
                    })
                ) {
                    dom.push(self.name()?);
                }
                self.expect_arrow()?;
                let rng = self.name()?;
                self.expect_punct(';')?;
                ops.push(Operator { name: op, dom, rng });
            } else {
                return Err(self.err_here("expected `sorts` or `op`"));
            }
        }
        self.expect_punct('}')?;
        let sig = Signature::new(sorts, ops).map_err(|e| DocError::Invalid {
            kind: "signature",
            name: name.clone(),
            message: e.to_string(),
        })?;
        if doc.signatures.insert(name.clone(), sig).is_some() {
            return Err(DocError::Duplicate {
                kind: "signature",
                name,
            });
        }
        Ok(())
    }

    fn algebra_item(&mut self, doc: &mut Document) -> Result<(), DocError> {
        self.next();
        let name = self.name()?;
        self.expect_punct(':')?;
        let sig = self.name()?;
        self.expect_punct('{')?;
        let mut carriers: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        let mut interps: BTreeMap<String, BTreeMap<Vec<String>, String>> = BTreeMap::new();
        while !self.at_punct('}') {
            if self.at_name("carrier") {
                self.next();
                let sort = self.name()?;
                self.expect_punct('=')?;
                let mut elems = BTreeSet::new();
                while !self.at_punct(';') {
                    elems.insert(self.name()?);
                }
                self.expect_punct(';')?;
                carriers.insert(sort, elems);
            } else if self.at_name("op") {
                self.next();
                let op = self.name()?;
                self.expect_punct('(')?;
                let mut args = Vec::new();
                if !self.at_punct(')') {
                    args.push(self.name()?);
                    while self.at_punct(',') {
                        self.next();
                        args.push(self.name()?);
                    }
                }
                self.expect_punct(')')?;
                self.expect_punct('=')?;
                let v = self.name()?;
                self.expect_punct(';')?;
                interps.entry(op).or_default().insert(args, v);
            } else {
                return Err(self.err_here("expected `carrier` or `op`"));
            }
        }
        self.expect_punct('}')?;
        if doc
            .algebras
            .insert(
                name.clone(),
                DocAlgebra {
                    sig,
                    carriers,
                    interps,
                },
            )
            .is_some()
        {
            return Err(DocError::Duplicate {
                kind: "algebra",
                name,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
# the two-edge example
monograph A {
  x: x y x;
  y: y x y;
}
morphism swap : A -> A {
  x -> y;
  y -> x;
}
"#;

    #[test]
    fn parses_the_two_edge_example() {
        let doc = Document::parse(SAMPLE).unwrap();
        let a = doc.monograph("A").unwrap();
        assert_eq!(a.edge_count(), 2);
        assert_eq!(a.trace(), BTreeSet::from([3]));
        let swap = doc.morphism("swap").unwrap();
        assert!(swap.classify().iso);
    }

    #[test]
    fn empty_input_is_the_empty_document() {
        let doc = Document::parse("").unwrap();
        assert_eq!(doc, Document::default());
        assert_eq!(Document::parse("# only a comment\n").unwrap(), doc);
    }

    #[test]
    fn serialize_then_parse_is_identity() {
        let doc = Document::parse(SAMPLE).unwrap();
        let text = doc.serialize();
        let again = Document::parse(&text).unwrap();
        assert_eq!(doc, again);
        // Canonical form is a serialization fixpoint.
        assert_eq!(text, again.serialize());
    }

    #[test]
    fn nodes_parse_with_empty_right_sides() {
        let doc = Document::parse("monograph G { n: ; e: n n; }").unwrap();
        let g = doc.monograph("G").unwrap();
        assert_eq!(g.nodes().len(), 1);
    }

    #[test]
    fn quoted_names_round_trip() {
        let mut doc = Document::default();
        let m = Monograph::build(&[("(x,y)", &["(x,y)", "(x,y)", "(x,y)"])]).unwrap();
        doc.monographs.insert("P".into(), m);
        let text = doc.serialize();
        assert!(text.contains("\"(x,y)\""));
        assert_eq!(Document::parse(&text).unwrap(), doc);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = Document::parse("monograph A {\n  x: y %\n}").unwrap_err();
        assert_eq!(
            err,
            DocError::Syntax {
                line: 2,
                col: 8,
                msg: "unexpected character `%`".into()
            }
        );
    }

    #[test]
    fn dangling_edge_fails_validation() {
        let err = Document::parse("monograph A { x: z; }").unwrap_err();
        assert!(matches!(
            err,
            DocError::Invalid {
                kind: "monograph",
                ..
            }
        ));
    }

    #[test]
    fn unresolved_morphism_reference_is_reported() {
        let err = Document::parse("morphism f : A -> A { }").unwrap_err();
        assert!(matches!(
            err,
            DocError::Unresolved {
                kind: "monograph",
                ..
            }
        ));
    }

    #[test]
    fn rules_resolve_and_share_their_domain() {
        let text = r#"
monograph K { n: ; }
monograph L { n: ; lp: n n; }
morphism l : K -> L { n -> n; }
morphism r : K -> K { n -> n; }
rule unloop { left: l; right: r; }
"#;
        let doc = Document::parse(text).unwrap();
        let rule = doc.rule("unloop").unwrap();
        assert_eq!(rule.left.cod().edge_count(), 2);
    }

    #[test]
    fn signatures_and_algebras_round_trip() {
        let text = r#"
signature S {
  sorts s t;
  op f: s -> t;
  op g: s s -> s;
}
algebra C : S {
  carrier s = a b;
  carrier t = u;
  op f(a) = u;
  op f(b) = u;
  op g(a, a) = a;
  op g(a, b) = b;
  op g(b, a) = b;
  op g(b, b) = a;
}
"#;
        let doc = Document::parse(text).unwrap();
        let alg = doc.algebra("C").unwrap();
        assert_eq!(
            alg.apply("g", &["a".into(), "b".into()]),
            Some(&"b".to_string())
        );
        let again = Document::parse(&doc.serialize()).unwrap();
        assert_eq!(doc, again);
    }

    #[test]
    fn partial_algebra_tables_are_rejected() {
        let text = r#"
signature S { sorts s; op f: s -> s; }
algebra C : S { carrier s = a b; op f(a) = b; }
"#;
        assert!(matches!(
            Document::parse(text).unwrap_err(),
            DocError::Invalid {
                kind: "algebra",
                ..
            }
        ));
    }
}
