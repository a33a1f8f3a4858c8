//! Recursive-descent parser for the functional-style axiom syntax.
//!
//! ```text
//! Ontology   := Line*                      Line := Axiom | Assertion
//! Axiom      := SubClassOf(C C) | EquivalentClasses(C C+) | DisjointClasses(C C+)
//! Assertion  := ClassAssertion(C Ind) | ObjectPropertyAssertion(Role Ind Ind)
//! C          := owl:Thing | owl:Nothing | Name | ObjectIntersectionOf(C C+)
//!             | ObjectSomeValuesFrom(Role C)
//! ExtC       := C-forms over ExtC | ObjectUnionOf(ExtC ExtC+) | ObjectOneOf(Ind)
//!             | ObjectSomeValuesFrom(ExtRole ExtC) | Var | Mu(Var ExtC)
//! ExtRole    := Role | ObjectInverseOf(Role)
//! ```
//!
//! A `#` at the start of a token comments out the rest of the line. Names
//! may carry a leading `:`, which is dropped. Fixpoint variables start
//! with `?`.

use super::axiom::{Axiom, ExtAxiom};
use super::concept::Concept;
use super::extended::{ExtConcept, Role};
use super::names::{
    ConceptName, IndividualName, RoleName, BOTTOM_TOKEN, RESERVED_PREFIX, TOP_TOKEN,
};
use super::ontology::Ontology;
use crate::error::{Error, Result};

/// Start symbol selector for [`parse`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseKind {
    Ontology,
    Axiom,
    Concept,
    ExtendedAxiom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Ontology(Ontology),
    Axiom(Axiom),
    Concept(Concept),
    ExtendedAxiom(ExtAxiom),
}

pub fn parse(text: &str, kind: ParseKind) -> Result<Parsed> {
    Ok(match kind {
        ParseKind::Ontology => Parsed::Ontology(parse_ontology(text)?),
        ParseKind::Axiom => Parsed::Axiom(parse_axiom(text)?),
        ParseKind::Concept => Parsed::Concept(parse_concept(text)?),
        ParseKind::ExtendedAxiom => Parsed::ExtendedAxiom(parse_extended_axiom(text)?),
    })
}

pub fn parse_ontology(text: &str) -> Result<Ontology> {
    let mut p = Parser::new(text)?;
    let mut o = Ontology::new();
    while !p.at_end() {
        o.add(p.core_axiom()?);
    }
    Ok(o)
}

pub fn parse_axiom(text: &str) -> Result<Axiom> {
    let mut p = Parser::new(text)?;
    let ax = p.core_axiom()?;
    p.expect_end()?;
    Ok(ax)
}

/// Parses several axioms, e.g. one per line.
pub fn parse_axioms(text: &str) -> Result<Vec<Axiom>> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    while !p.at_end() {
        out.push(p.core_axiom()?);
    }
    Ok(out)
}

pub fn parse_concept(text: &str) -> Result<Concept> {
    let mut p = Parser::new(text)?;
    let c = p.concept()?;
    p.expect_end()?;
    to_core(&c)
}

pub fn parse_extended_axiom(text: &str) -> Result<ExtAxiom> {
    let mut p = Parser::new(text)?;
    let ax = p.axiom()?;
    p.expect_end()?;
    Ok(ax)
}

pub fn parse_extended_concept(text: &str) -> Result<ExtConcept> {
    let mut p = Parser::new(text)?;
    let c = p.concept()?;
    p.expect_end()?;
    Ok(c)
}

/// Parses blocks of extended axioms separated by lines holding `---`.
pub fn parse_extended_blocks(text: &str) -> Result<Vec<Vec<ExtAxiom>>> {
    let mut p = Parser::new(text)?;
    let mut blocks = vec![Vec::new()];
    while !p.at_end() {
        if p.peek_ident() == Some("---") {
            p.advance();
            blocks.push(Vec::new());
            continue;
        }
        let ax = p.axiom()?;
        if let Some(b) = blocks.last_mut() {
            b.push(ax);
        }
    }
    Ok(blocks.into_iter().filter(|b| !b.is_empty()).collect())
}

fn to_core(c: &ExtConcept) -> Result<Concept> {
    c.to_core().ok_or_else(|| {
        Error::ExtendedSyntaxInCoreContext(
            c.first_extended_construct().unwrap_or("extended construct").to_string(),
        )
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Ident(String),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        if ch == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if ch.is_whitespace() {
            chars.next();
            col += 1;
        } else if ch == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
        } else if ch == '(' || ch == ')' {
            chars.next();
            out.push(Token {
                tok: if ch == '(' { Tok::Open } else { Tok::Close },
                line,
                col,
            });
            col += 1;
        } else {
            let (l, c) = (line, col);
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() || c == '(' || c == ')' {
                    break;
                }
                s.push(c);
                chars.next();
                col += 1;
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line: l,
                col: c,
            });
        }
    }
    out
}

const KEYWORDS: &[&str] = &[
    "SubClassOf",
    "EquivalentClasses",
    "DisjointClasses",
    "ClassAssertion",
    "ObjectPropertyAssertion",
    "ObjectIntersectionOf",
    "ObjectUnionOf",
    "ObjectSomeValuesFrom",
    "ObjectOneOf",
    "ObjectInverseOf",
    "Mu",
];

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
    end: (usize, usize),
    bound: Vec<String>,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let tokens = tokenize(text);
        let lines: Vec<&str> = text.split('\n').collect();
        let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
        Ok(Parser {
            tokens,
            idx: 0,
            end,
            bound: Vec::new(),
        })
    }

    fn at_end(&self) -> bool {
        self.idx >= self.tokens.len()
    }

    fn pos(&self) -> (usize, usize) {
        self.tokens
            .get(self.idx)
            .map_or(self.end, |t| (t.line, t.col))
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        let (line, col) = self.pos();
        Err(Error::syntax(line, col, expected))
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.idx).map(|t| &t.tok)
    }

    fn peek_ident(&self) -> Option<&str> {
        match self.peek() {
            Some(Tok::Ident(s)) => Some(s),
            _ => None,
        }
    }

    fn advance(&mut self) {
        self.idx += 1;
    }

    fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("end of input")
        }
    }

    fn close(&mut self) -> Result<()> {
        if self.peek() == Some(&Tok::Close) {
            self.advance();
            Ok(())
        } else {
            self.err("')'")
        }
    }

    fn at_close(&self) -> bool {
        self.peek() == Some(&Tok::Close)
    }

    /// Keyword immediately followed by `(`.
    fn keyword(&mut self) -> Option<String> {
        let kw = self.peek_ident()?.to_string();
        if KEYWORDS.contains(&kw.as_str())
            && matches!(self.tokens.get(self.idx + 1).map(|t| &t.tok), Some(Tok::Open))
        {
            self.idx += 2;
            Some(kw)
        } else {
            None
        }
    }

    fn plain_name(&mut self, what: &str) -> Result<String> {
        let Some(raw) = self.peek_ident().map(str::to_string) else {
            return self.err(what);
        };
        if KEYWORDS.contains(&raw.as_str()) || raw.starts_with('?') {
            return self.err(what);
        }
        let name = raw.strip_prefix(':').unwrap_or(&raw).to_string();
        if name.is_empty()
            || name.starts_with(RESERVED_PREFIX)
            || name == TOP_TOKEN
            || name == BOTTOM_TOKEN
            || name == "---"
        {
            return self.err(what);
        }
        self.advance();
        Ok(name)
    }

    fn individual(&mut self) -> Result<IndividualName> {
        self.plain_name("an individual name").map(IndividualName::new)
    }

    fn role_name(&mut self) -> Result<RoleName> {
        self.plain_name("a role name").map(RoleName::new)
    }

    fn role(&mut self) -> Result<Role> {
        if self.peek_ident() == Some("ObjectInverseOf") {
            if let Some(kw) = self.keyword() {
                debug_assert_eq!(kw, "ObjectInverseOf");
                let r = self.role_name()?;
                self.close()?;
                return Ok(Role::Inverse(r));
            }
        }
        Ok(Role::Named(self.role_name()?))
    }

    fn concept(&mut self) -> Result<ExtConcept> {
        if let Some(kw) = self.keyword() {
            let c = match kw.as_str() {
                "ObjectIntersectionOf" | "ObjectUnionOf" => {
                    let mut ops = vec![self.concept()?];
                    while !self.at_close() {
                        ops.push(self.concept()?);
                    }
                    if ops.len() < 2 {
                        return self.err("a concept");
                    }
                    if kw == "ObjectUnionOf" {
                        ExtConcept::or(ops)
                    } else {
                        ExtConcept::and(ops)
                    }
                }
                "ObjectSomeValuesFrom" => {
                    let r = self.role()?;
                    let f = self.concept()?;
                    ExtConcept::exists(r, f)
                }
                "ObjectOneOf" => ExtConcept::Nominal(self.individual()?),
                "Mu" => {
                    let var = match self.peek_ident() {
                        Some(v) if v.starts_with('?') && v.len() > 1 => v.to_string(),
                        _ => return self.err("a fixpoint variable"),
                    };
                    self.advance();
                    self.bound.push(var.clone());
                    let body = self.concept();
                    self.bound.pop();
                    ExtConcept::mu(var, body?)
                }
                _ => return self.err("a concept"),
            };
            self.close()?;
            return Ok(c);
        }
        match self.peek_ident() {
            Some(TOP_TOKEN) => {
                self.advance();
                Ok(ExtConcept::Top)
            }
            Some(BOTTOM_TOKEN) => {
                self.advance();
                Ok(ExtConcept::Bottom)
            }
            Some(v) if v.starts_with('?') => {
                let v = v.to_string();
                if !self.bound.contains(&v) {
                    return Err(Error::UnboundFixpointVariable(v));
                }
                self.advance();
                Ok(ExtConcept::Var(v))
            }
            _ => self
                .plain_name("a concept")
                .map(|n| ExtConcept::Name(ConceptName::new(n))),
        }
    }

    fn axiom(&mut self) -> Result<ExtAxiom> {
        let Some(kw) = self.keyword() else {
            return self.err("an axiom");
        };
        let ax = match kw.as_str() {
            "SubClassOf" => {
                let a = self.concept()?;
                let b = self.concept()?;
                Axiom::SubClassOf(a, b)
            }
            "EquivalentClasses" | "DisjointClasses" => {
                let mut cs = vec![self.concept()?];
                while !self.at_close() {
                    cs.push(self.concept()?);
                }
                if cs.len() < 2 {
                    return self.err("a concept");
                }
                if kw == "EquivalentClasses" {
                    Axiom::EquivalentClasses(cs)
                } else {
                    Axiom::DisjointClasses(cs)
                }
            }
            "ClassAssertion" => {
                let c = self.concept()?;
                let a = self.individual()?;
                Axiom::ClassAssertion(c, a)
            }
            "ObjectPropertyAssertion" => {
                let r = self.role_name()?;
                let a = self.individual()?;
                let b = self.individual()?;
                Axiom::RoleAssertion(r, a, b)
            }
            _ => return self.err("an axiom"),
        };
        self.close()?;
        Ok(ax)
    }

    fn core_axiom(&mut self) -> Result<Axiom> {
        let ax = self.axiom()?;
        let mut failed = None;
        let core = ax.try_map_concepts(|c| {
            let r = c.to_core();
            if r.is_none() && failed.is_none() {
                failed = c.first_extended_construct();
            }
            r
        });
        core.ok_or_else(|| {
            Error::ExtendedSyntaxInCoreContext(failed.unwrap_or("extended construct").to_string())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_with_exists() {
        let c = parse_concept("ObjectIntersectionOf(:A ObjectSomeValuesFrom(:r :B))").unwrap();
        assert_eq!(
            c,
            Concept::And(vec![Concept::name("A"), Concept::exists("r", Concept::name("B"))])
        );
    }

    #[test]
    fn thing_is_top() {
        assert_eq!(parse_concept("owl:Thing").unwrap(), Concept::Top);
        assert_eq!(parse_concept("owl:Nothing").unwrap(), Concept::Bottom);
    }

    #[test]
    fn exists_arity() {
        let err = parse_concept("ObjectSomeValuesFrom(:r)").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, col: 24, .. }), "{err:?}");
    }

    #[test]
    fn colon_is_optional() {
        assert_eq!(parse_concept("A").unwrap(), parse_concept(":A").unwrap());
    }

    #[test]
    fn reserved_names_rejected() {
        assert!(matches!(parse_concept("_:X0"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn extended_rejected_in_core() {
        let err = parse_axiom("SubClassOf(:A ObjectUnionOf(:B :C))").unwrap_err();
        assert_eq!(err, Error::ExtendedSyntaxInCoreContext("ObjectUnionOf".into()));
        let err = parse_concept("ObjectSomeValuesFrom(ObjectInverseOf(:r) :B)").unwrap_err();
        assert_eq!(err, Error::ExtendedSyntaxInCoreContext("ObjectInverseOf".into()));
    }

    #[test]
    fn unbound_variable() {
        let err = parse_extended_axiom("ClassAssertion(?X :a)").unwrap_err();
        assert_eq!(err, Error::UnboundFixpointVariable("?X".into()));
        assert!(parse_extended_axiom("ClassAssertion(Mu(?X ObjectUnionOf(:A ?X)) :a)").is_ok());
    }

    #[test]
    fn ontology_with_comments_and_lines() {
        let text = "# pizza\nSubClassOf(:A :B)\nClassAssertion(:A :a) # trailing\n";
        let o = parse_ontology(text).unwrap();
        assert_eq!(o.len(), 2);
        assert_eq!(o.serialize(), "SubClassOf(:A :B)\nClassAssertion(:A :a)\n");
    }

    #[test]
    fn error_line_numbers() {
        let err = parse_ontology("SubClassOf(:A :B)\nSubClassOf(:A)\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn blocks() {
        let text = "SubClassOf(:A :B)\n---\nSubClassOf(:A :C)\nSubClassOf(:C :D)\n";
        let blocks = parse_extended_blocks(text).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[1].len(), 2);
    }

    #[test]
    fn parse_kind_dispatch() {
        assert!(matches!(parse("owl:Thing", ParseKind::Concept), Ok(Parsed::Concept(Concept::Top))));
        assert!(matches!(parse("", ParseKind::Ontology), Ok(Parsed::Ontology(o)) if o.is_empty()));
    }
}
