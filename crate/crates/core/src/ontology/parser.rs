//! Line-oriented parser for the functional-style ontology format.
//!
//! ```text
//! Class(C)
//! SubClassOf(C, CE)            EquivalentClasses(C, CE)
//! ObjectProperty(P)            DatatypeProperty(P)
//! Domain(P, C)                 Range(P, C | xsd:...)
//! InverseOf(P, Q)              Functional(P)
//!
//! CE := C | And(CE, CE, ...) | Or(CE, CE, ...) | Some(P, CE) | Only(P, CE)
//!     | Min(P, n[, CE]) | Max(P, n[, CE]) | Exact(P, n[, CE])
//!     | DataSome(P, xsd:...) | DataOnly(P, xsd:...)
//! ```
//!
//! One statement per line, `#` starts a comment. A malformed line produces an
//! error diagnostic and parsing resumes on the next line. Declarations are
//! applied before any other statement, so the order of lines does not matter.

use crate::diagnostic::{codes, Diagnostic};
use crate::dl::{ClassExpression, DatatypeName};
use crate::name::Name;

use super::{EquivalenceAxiom, Ontology, SubClassAxiom};

const UNSUPPORTED: &[&str] = &[
    "Not",
    "ComplementOf",
    "ObjectComplementOf",
    "OneOf",
    "ObjectOneOf",
    "HasValue",
    "ObjectHasValue",
    "HasSelf",
    "PropertyChain",
    "ObjectPropertyChain",
    "SubPropertyChain",
];

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Word(&'a str),
    Open,
    Close,
    Comma,
}

/// Generic call tree: `Head(arg, arg, ...)` or a bare word.
#[derive(Debug)]
enum Term<'a> {
    Word(&'a str, Pos),
    Call(&'a str, Vec<Term<'a>>, Pos),
}

impl Term<'_> {
    fn pos(&self) -> Pos {
        match self {
            Term::Word(_, p) | Term::Call(_, _, p) => *p,
        }
    }
}

fn err(code: &'static str, pos: Pos, message: impl Into<String>) -> Diagnostic {
    Diagnostic::error(code, message).at(pos.line, pos.column)
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<(Tok<'_>, Pos)>, Diagnostic> {
    let mut out = Vec::new();
    let mut chars = line.char_indices().peekable();
    let mut column = 0;
    while let Some((i, c)) = chars.next() {
        column += 1;
        let pos = Pos {
            line: line_no,
            column,
        };
        match c {
            '#' => break,
            '(' => out.push((Tok::Open, pos)),
            ')' => out.push((Tok::Close, pos)),
            ',' => out.push((Tok::Comma, pos)),
            c if c.is_whitespace() => {}
            c if is_word_char(c) => {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = chars.peek() {
                    if !is_word_char(d) {
                        break;
                    }
                    end = j + d.len_utf8();
                    column += 1;
                    chars.next();
                }
                out.push((Tok::Word(&line[i..end]), pos));
            }
            other => {
                return Err(err(
                    codes::PARSE_SYNTAX,
                    pos,
                    format!("unexpected character {other:?}"),
                ));
            }
        }
    }
    Ok(out)
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == ':'
}

struct TermParser<'t, 'a> {
    toks: &'t [(Tok<'a>, Pos)],
    at: usize,
    end: Pos,
}

impl<'a> TermParser<'_, 'a> {
    fn peek(&self) -> Option<&(Tok<'a>, Pos)> {
        self.toks.get(self.at)
    }

    fn here(&self) -> Pos {
        self.peek().map(|t| t.1).unwrap_or(self.end)
    }

    fn term(&mut self) -> Result<Term<'a>, Diagnostic> {
        let (word, pos) = match self.peek() {
            Some((Tok::Word(w), p)) => (*w, *p),
            _ => {
                return Err(err(
                    codes::PARSE_SYNTAX,
                    self.here(),
                    "expected a name or expression",
                ))
            }
        };
        self.at += 1;
        if !matches!(self.peek(), Some((Tok::Open, _))) {
            return Ok(Term::Word(word, pos));
        }
        self.at += 1;
        let mut args = Vec::new();
        if matches!(self.peek(), Some((Tok::Close, _))) {
            self.at += 1;
            return Ok(Term::Call(word, args, pos));
        }
        loop {
            args.push(self.term()?);
            match self.peek() {
                Some((Tok::Comma, _)) => self.at += 1,
                Some((Tok::Close, _)) => {
                    self.at += 1;
                    return Ok(Term::Call(word, args, pos));
                }
                _ => return Err(err(codes::PARSE_SYNTAX, self.here(), "expected `,` or `)`")),
            }
        }
    }
}

#[derive(Debug)]
enum Statement {
    Class(Name),
    ObjectProperty(Name),
    DatatypeProperty(Name),
    SubClassOf(Name, ClassExpression),
    EquivalentClasses(Name, ClassExpression),
    Domain(Name, Name),
    Range(Name, RangeTarget),
    InverseOf(Name, Name),
    Functional(Name),
}

#[derive(Debug)]
enum RangeTarget {
    Class(Name),
    Datatype(DatatypeName),
}

fn name_of(term: &Term<'_>) -> Result<Name, Diagnostic> {
    match term {
        Term::Word(w, pos) => Name::new(w)
            .map_err(|e| err(codes::PARSE_NAME, *pos, format!("invalid name `{w}`: {e}"))),
        Term::Call(head, _, pos) => Err(err(
            codes::PARSE_NAME,
            *pos,
            format!("expected a name, found `{head}(...)`"),
        )),
    }
}

fn number_of(term: &Term<'_>) -> Result<u32, Diagnostic> {
    match term {
        Term::Word(w, pos) if w.bytes().all(|b| b.is_ascii_digit()) => w.parse().map_err(|_| {
            err(
                codes::PARSE_NUMBER,
                *pos,
                format!("cardinality `{w}` is out of range"),
            )
        }),
        other => Err(err(
            codes::PARSE_NUMBER,
            other.pos(),
            "expected a non-negative decimal integer",
        )),
    }
}

fn datatype_of(term: &Term<'_>) -> Result<DatatypeName, Diagnostic> {
    match term {
        Term::Word(w, pos) => w
            .parse()
            .map_err(|e| err(codes::PARSE_DATATYPE, *pos, format!("{e}"))),
        other => Err(err(
            codes::PARSE_DATATYPE,
            other.pos(),
            "expected an xsd datatype",
        )),
    }
}

fn arity(head: &str, args: &[Term<'_>], pos: Pos, allowed: &[usize]) -> Result<(), Diagnostic> {
    if allowed.contains(&args.len()) {
        return Ok(());
    }
    let expected: Vec<String> = allowed.iter().map(|n| n.to_string()).collect();
    Err(err(
        codes::PARSE_ARITY,
        pos,
        format!(
            "`{head}` takes {} argument(s), got {}",
            expected.join(" or "),
            args.len()
        ),
    ))
}

fn class_expression(term: &Term<'_>) -> Result<ClassExpression, Diagnostic> {
    let (head, args, pos) = match term {
        Term::Word(..) => return name_of(term).map(ClassExpression::Atomic),
        Term::Call(head, args, pos) => (*head, args.as_slice(), *pos),
    };
    if UNSUPPORTED.contains(&head) {
        return Err(err(
            codes::PARSE_UNSUPPORTED,
            pos,
            format!("`{head}` is outside the supported description-logic subset"),
        ));
    }
    let filler = |i: usize| -> Result<Option<ClassExpression>, Diagnostic> {
        args.get(i).map(class_expression).transpose()
    };
    match head {
        "And" | "Or" => {
            if args.len() < 2 {
                return Err(err(
                    codes::PARSE_ARITY,
                    pos,
                    format!("`{head}` takes at least 2 operands, got {}", args.len()),
                ));
            }
            let ops = args
                .iter()
                .map(class_expression)
                .collect::<Result<Vec<_>, _>>()?;
            let built = if head == "And" {
                ClassExpression::intersection(ops)
            } else {
                ClassExpression::union(ops)
            };
            Ok(built.expect("operand count checked"))
        }
        "Some" | "Only" => {
            arity(head, args, pos, &[2])?;
            let p = name_of(&args[0])?;
            let f = class_expression(&args[1])?;
            Ok(if head == "Some" {
                ClassExpression::exists(p, f)
            } else {
                ClassExpression::for_all(p, f)
            })
        }
        "Min" | "Max" | "Exact" => {
            arity(head, args, pos, &[2, 3])?;
            let p = name_of(&args[0])?;
            let n = number_of(&args[1])?;
            let f = filler(2)?;
            Ok(match head {
                "Min" => ClassExpression::min_card(p, n, f),
                "Max" => ClassExpression::max_card(p, n, f),
                _ => ClassExpression::exact_card(p, n, f),
            })
        }
        "DataSome" | "DataOnly" => {
            arity(head, args, pos, &[2])?;
            let property = name_of(&args[0])?;
            let datatype = datatype_of(&args[1])?;
            Ok(if head == "DataSome" {
                ClassExpression::DataExists { property, datatype }
            } else {
                ClassExpression::DataForAll { property, datatype }
            })
        }
        other => Err(err(
            codes::PARSE_KEYWORD,
            pos,
            format!("unknown class constructor `{other}`"),
        )),
    }
}

fn statement(term: &Term<'_>) -> Result<Statement, Diagnostic> {
    let (head, args, pos) = match term {
        Term::Call(head, args, pos) => (*head, args.as_slice(), *pos),
        Term::Word(w, pos) => {
            return Err(err(
                codes::PARSE_SYNTAX,
                *pos,
                format!("expected `{w}(...)`"),
            ));
        }
    };
    if UNSUPPORTED.contains(&head) {
        return Err(err(
            codes::PARSE_UNSUPPORTED,
            pos,
            format!("`{head}` is outside the supported description-logic subset"),
        ));
    }
    match head {
        "Class" | "ObjectProperty" | "DatatypeProperty" | "Functional" => {
            arity(head, args, pos, &[1])?;
            let n = name_of(&args[0])?;
            Ok(match head {
                "Class" => Statement::Class(n),
                "ObjectProperty" => Statement::ObjectProperty(n),
                "DatatypeProperty" => Statement::DatatypeProperty(n),
                _ => Statement::Functional(n),
            })
        }
        "SubClassOf" | "EquivalentClasses" => {
            arity(head, args, pos, &[2])?;
            let subject = name_of(&args[0])?;
            let expr = class_expression(&args[1])?;
            Ok(if head == "SubClassOf" {
                Statement::SubClassOf(subject, expr)
            } else {
                Statement::EquivalentClasses(subject, expr)
            })
        }
        "Domain" | "InverseOf" => {
            arity(head, args, pos, &[2])?;
            let a = name_of(&args[0])?;
            let b = name_of(&args[1])?;
            Ok(if head == "Domain" {
                Statement::Domain(a, b)
            } else {
                Statement::InverseOf(a, b)
            })
        }
        "Range" => {
            arity(head, args, pos, &[2])?;
            let p = name_of(&args[0])?;
            let target = match &args[1] {
                Term::Word(w, _) if w.starts_with("xsd:") => {
                    RangeTarget::Datatype(datatype_of(&args[1])?)
                }
                other => RangeTarget::Class(name_of(other)?),
            };
            Ok(Statement::Range(p, target))
        }
        other => Err(err(
            codes::PARSE_KEYWORD,
            pos,
            format!("unknown statement `{other}`"),
        )),
    }
}

fn parse_line(line: &str, line_no: usize) -> Result<Option<(Statement, Pos)>, Diagnostic> {
    let toks = tokenize(line, line_no)?;
    if toks.is_empty() {
        return Ok(None);
    }
    let end = Pos {
        line: line_no,
        column: line.chars().count() + 1,
    };
    let mut p = TermParser {
        toks: &toks,
        at: 0,
        end,
    };
    let term = p.term()?;
    if p.at < toks.len() {
        return Err(err(
            codes::PARSE_SYNTAX,
            p.here(),
            "trailing input after statement",
        ));
    }
    let pos = term.pos();
    Ok(Some((statement(&term)?, pos)))
}

/// Parses raw bytes; invalid UTF-8 sequences are replaced before parsing.
pub fn parse_ontology_bytes(bytes: &[u8]) -> (Ontology, Vec<Diagnostic>) {
    parse_ontology(&String::from_utf8_lossy(bytes))
}

/// Parses ontology text into a store plus diagnostics for every malformed or
/// contradictory statement. Never fails outright.
pub fn parse_ontology(text: &str) -> (Ontology, Vec<Diagnostic>) {
    let mut diags = Vec::new();
    let mut statements = Vec::new();
    for (i, line) in text.lines().enumerate() {
        match parse_line(line, i + 1) {
            Ok(Some(s)) => statements.push(s),
            Ok(None) => {}
            Err(d) => diags.push(d),
        }
    }

    let mut o = Ontology::new();
    // Declarations first so later lines may be referenced earlier.
    for (s, pos) in &statements {
        match s {
            Statement::Class(c) => {
                o.classes.insert(c.clone());
            }
            Statement::ObjectProperty(p) => {
                if o.datatype_properties.contains_key(p) {
                    diags.push(err(
                        codes::PROPERTY_KIND_CONFLICT,
                        *pos,
                        format!("`{p}` is declared both as object and datatype property"),
                    ));
                } else {
                    o.object_properties.entry(p.clone()).or_default();
                }
            }
            Statement::DatatypeProperty(p) => {
                if o.object_properties.contains_key(p) {
                    diags.push(err(
                        codes::PROPERTY_KIND_CONFLICT,
                        *pos,
                        format!("`{p}` is declared both as object and datatype property"),
                    ));
                } else {
                    o.datatype_properties.entry(p.clone()).or_default();
                }
            }
            _ => {}
        }
    }
    for (s, pos) in statements {
        if let Err(d) = apply(&mut o, s) {
            diags.push(d.at(pos.line, pos.column));
        }
    }
    (o, diags)
}

fn undeclared(p: &Name) -> Diagnostic {
    Diagnostic::error(
        codes::UNDECLARED_PROPERTY,
        format!("property `{p}` is not declared"),
    )
}

fn set_once<T: PartialEq + Clone + std::fmt::Display>(
    slot: &mut Option<T>,
    value: T,
    what: &str,
    p: &Name,
) -> Result<(), Diagnostic> {
    match slot {
        None => {
            *slot = Some(value);
            Ok(())
        }
        Some(existing) if *existing == value => Ok(()),
        Some(existing) => Err(Diagnostic::error(
            codes::CONFLICTING_AXIOM,
            format!("{what} of `{p}` is already `{existing}`, ignoring `{value}`"),
        )),
    }
}

fn apply(o: &mut Ontology, s: Statement) -> Result<(), Diagnostic> {
    match s {
        Statement::Class(_) | Statement::ObjectProperty(_) | Statement::DatatypeProperty(_) => {
            Ok(())
        }
        Statement::SubClassOf(subject, superclass) => {
            o.subclass_axioms.push(SubClassAxiom {
                subject,
                superclass,
            });
            Ok(())
        }
        Statement::EquivalentClasses(subject, definition) => {
            o.equivalence_axioms.push(EquivalenceAxiom {
                subject,
                definition,
            });
            Ok(())
        }
        Statement::Domain(p, c) => {
            if let Some(info) = o.object_properties.get_mut(&p) {
                set_once(&mut info.domain, c, "domain", &p)
            } else if let Some(info) = o.datatype_properties.get_mut(&p) {
                set_once(&mut info.domain, c, "domain", &p)
            } else {
                Err(undeclared(&p))
            }
        }
        Statement::Range(p, RangeTarget::Class(c)) => {
            if let Some(info) = o.object_properties.get_mut(&p) {
                set_once(&mut info.range, c, "range", &p)
            } else if o.datatype_properties.contains_key(&p) {
                Err(Diagnostic::error(
                    codes::PROPERTY_KIND_MISMATCH,
                    format!("datatype property `{p}` needs an xsd range, got class `{c}`"),
                ))
            } else {
                Err(undeclared(&p))
            }
        }
        Statement::Range(p, RangeTarget::Datatype(d)) => {
            if let Some(info) = o.datatype_properties.get_mut(&p) {
                set_once(&mut info.range, d, "range", &p)
            } else if o.object_properties.contains_key(&p) {
                Err(Diagnostic::error(
                    codes::PROPERTY_KIND_MISMATCH,
                    format!("object property `{p}` cannot have datatype range `{d}`"),
                ))
            } else {
                Err(undeclared(&p))
            }
        }
        Statement::InverseOf(p, q) => {
            for x in [&p, &q] {
                if !o.object_properties.contains_key(x) {
                    return Err(if o.datatype_properties.contains_key(x) {
                        Diagnostic::error(
                            codes::PROPERTY_KIND_MISMATCH,
                            format!(
                                "InverseOf needs object properties, `{x}` is a datatype property"
                            ),
                        )
                    } else {
                        undeclared(x)
                    });
                }
            }
            let info = o.object_properties.get_mut(&p).expect("checked above");
            set_once(&mut info.inverse_of, q, "inverse", &p)
        }
        Statement::Functional(p) => {
            if let Some(info) = o.object_properties.get_mut(&p) {
                info.functional = true;
                Ok(())
            } else if o.datatype_properties.contains_key(&p) {
                Err(Diagnostic::error(
                    codes::PROPERTY_KIND_MISMATCH,
                    format!(
                        "Functional applies to object properties, `{p}` is a datatype property"
                    ),
                ))
            } else {
                Err(undeclared(&p))
            }
        }
    }
}
