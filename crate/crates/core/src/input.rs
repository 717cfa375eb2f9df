//! Text format for rings, ideals and modules.
//!
//! ```text
//! ring a, b, c, d;            # variables, first declared is largest
//! ideal a^2, b^2, a*d - 2*b*c;
//! extra c*d;                  # further generators, e.g. for a Golod test
//! order d < c < b < a;        # optional degrevlex variable ranking
//! module gens 0, 1;           # generator degrees
//! rel a, -b^2;                # one relation column per statement
//! ```
//!
//! `module cyclic f, g;` describes `R/(f, g)` instead of a presentation.
//! Every polynomial must be homogeneous.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gb::{MonomialOrder, MultiPolynomial};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::resolution::{GradedModulePresentation, QuotientRing};

/// Polynomial with integer coefficients, as written in the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl ParsedPolynomial {
    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(Monomial::degree);
        d.next().map_or(true, |first| d.all(|e| e == first))
    }

    /// The monomial, when there is a single term.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.len() {
            1 => self.terms.keys().next(),
            _ => None,
        }
    }

    pub fn to_field<F: Field>(&self, field: &F) -> MultiPolynomial<F> {
        MultiPolynomial::from_terms(
            field,
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), field.from_bigint(c))),
        )
    }

    /// Terms in decreasing lexicographic order of exponents.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let magnitude = c.abs();
            if m.is_one() {
                let _ = write!(out, "{magnitude}");
            } else {
                if !magnitude.is_one() {
                    let _ = write!(out, "{magnitude}*");
                }
                out.push_str(&m.render(names));
            }
        }
        out
    }
}

/// Module part of an input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleBlock {
    /// Generator degrees and relation columns.
    Presentation {
        generator_degrees: Vec<u32>,
        relations: Vec<Vec<ParsedPolynomial>>,
    },
    /// `R/J` for the listed generators of `J`.
    Cyclic(Vec<ParsedPolynomial>),
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDescription {
    pub variables: Vec<String>,
    pub ideal: Vec<ParsedPolynomial>,
    pub extra: Vec<ParsedPolynomial>,
    /// Variable indices from smallest to largest.
    pub order: Option<Vec<usize>>,
    pub module: Option<ModuleBlock>,
}

impl InputDescription {
    pub fn monomial_order(&self) -> MonomialOrder {
        match &self.order {
            Some(p) => MonomialOrder::degrevlex(p.clone()).expect("validated while parsing"),
            None => MonomialOrder::standard(self.variables.len()),
        }
    }

    /// The ideal as a monomial ideal, when every generator is a monomial.
    pub fn monomial_ideal(&self) -> Result<MonomialIdeal> {
        let gens = self
            .ideal
            .iter()
            .map(|p| {
                p.as_monomial().cloned().ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "{} is not a monomial",
                        p.render(&self.variables)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialIdeal::new(self.variables.clone(), gens))
    }

    pub fn ideal_over<F: Field>(&self, field: &F) -> Vec<MultiPolynomial<F>> {
        self.ideal.iter().map(|p| p.to_field(field)).collect()
    }

    pub fn extra_over<F: Field>(&self, field: &F) -> Vec<MultiPolynomial<F>> {
        self.extra.iter().map(|p| p.to_field(field)).collect()
    }

    /// `S/I` with slices through `degree_bound`.
    pub fn quotient_ring<F: Field>(&self, field: &F, degree_bound: u32) -> Result<QuotientRing<F>> {
        QuotientRing::new(
            field,
            self.variables.clone(),
            self.ideal_over(field),
            self.monomial_order(),
            degree_bound,
        )
    }

    /// The module block over `ring`; the residue field when absent.
    pub fn module_over<'r, F: Field>(
        &self,
        ring: &'r QuotientRing<F>,
    ) -> Result<GradedModulePresentation<'r, F>> {
        let field = ring.field();
        match &self.module {
            None => Ok(GradedModulePresentation::residue_field(ring)),
            Some(ModuleBlock::Cyclic(gens)) => {
                let gens: Vec<_> = gens.iter().map(|p| p.to_field(field)).collect();
                GradedModulePresentation::cyclic(ring, &gens)
            }
            Some(ModuleBlock::Presentation {
                generator_degrees,
                relations,
            }) => GradedModulePresentation::new(
                ring,
                generator_degrees.clone(),
                relations
                    .iter()
                    .map(|col| col.iter().map(|p| p.to_field(field)).collect())
                    .collect(),
            ),
        }
    }

    /// Largest degree among ideal, extra and module data.
    pub fn max_degree(&self) -> u32 {
        let polys = self.ideal.iter().chain(&self.extra);
        let mut d = polys.filter_map(ParsedPolynomial::degree).max().unwrap_or(1);
        match &self.module {
            Some(ModuleBlock::Cyclic(gens)) => {
                d = d.max(gens.iter().filter_map(ParsedPolynomial::degree).max().unwrap_or(0));
            }
            Some(ModuleBlock::Presentation {
                generator_degrees,
                relations,
            }) => {
                for col in relations {
                    for (k, p) in col.iter().enumerate() {
                        if let Some(e) = p.degree() {
                            d = d.max(e + generator_degrees[k]);
                        }
                    }
                }
            }
            None => {}
        }
        d
    }

    /// Canonical text; parsing it gives back an equal description.
    pub fn to_text(&self) -> String {
        let names = &self.variables;
        let list = |ps: &[ParsedPolynomial]| {
            ps.iter().map(|p| p.render(names)).collect::<Vec<_>>().join(", ")
        };
        let mut out = format!("ring {};\n", names.join(", "));
        if !self.ideal.is_empty() {
            let _ = writeln!(out, "ideal {};", list(&self.ideal));
        }
        if !self.extra.is_empty() {
            let _ = writeln!(out, "extra {};", list(&self.extra));
        }
        if let Some(p) = &self.order {
            let ranked: Vec<&str> = p.iter().map(|&v| names[v].as_str()).collect();
            let _ = writeln!(out, "order {};", ranked.join(" < "));
        }
        match &self.module {
            Some(ModuleBlock::Cyclic(gens)) => {
                let _ = writeln!(out, "module cyclic {};", list(gens));
            }
            Some(ModuleBlock::Presentation {
                generator_degrees,
                relations,
            }) => {
                let degs: Vec<String> = generator_degrees.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "module gens {};", degs.join(", "));
                for col in relations {
                    let _ = writeln!(out, "rel {};", list(col));
                }
            }
            None => {}
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (l, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut c = 0;
        while c < chars.len() {
            let ch = chars[c];
            let pos = (l + 1, c + 1);
            if ch.is_whitespace() {
                c += 1;
            } else if ch.is_ascii_alphabetic() {
                let start = c;
                while c < chars.len() && (chars[c].is_ascii_alphanumeric() || chars[c] == '_') {
                    c += 1;
                }
                let word: String = chars[start..c].iter().collect();
                out.push(Token { tok: Tok::Ident(word), line: pos.0, column: pos.1 });
            } else if ch.is_ascii_digit() {
                let start = c;
                while c < chars.len() && chars[c].is_ascii_digit() {
                    c += 1;
                }
                let digits: String = chars[start..c].iter().collect();
                let n = digits.parse::<BigInt>().expect("digits");
                out.push(Token { tok: Tok::Int(n), line: pos.0, column: pos.1 });
            } else if ",;+-*^<".contains(ch) {
                out.push(Token { tok: Tok::Sym(ch), line: pos.0, column: pos.1 });
                c += 1;
            } else {
                return Err(Error::Parse {
                    line: pos.0,
                    column: pos.1,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Parse {
            line,
            column,
            message: message.into(),
        })
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(&Tok::Sym(ch)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            self.error(format!("expected '{ch}'"))
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize)> {
        let (line, column) = self.here();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, line, column))
            }
            _ => self.error("expected an identifier"),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.error("expected an integer"),
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        let here = self.here();
        let n = self.int()?;
        u32::try_from(&n).map_err(|_| Error::Parse {
            line: here.0,
            column: here.1,
            message: format!("integer {n} is too large"),
        })
    }

    fn term(&mut self, names: &[String]) -> Result<(BigInt, Monomial)> {
        let mut coeff = BigInt::one();
        let mut exps = vec![0u32; names.len()];
        loop {
            match self.peek() {
                Some(Tok::Int(_)) => coeff *= self.int()?,
                Some(Tok::Ident(_)) => {
                    let (name, line, column) = self.ident()?;
                    let v = names.iter().position(|n| *n == name).ok_or(Error::UnknownVariable {
                        name,
                        line,
                        column,
                    })?;
                    let e = if self.eat('^') { self.small_int()? } else { 1 };
                    exps[v] += e;
                }
                _ => return self.error("expected a coefficient or a variable"),
            }
            if !self.eat('*') {
                break;
            }
        }
        Ok((coeff, Monomial::new(exps)))
    }

    fn polynomial(&mut self, names: &[String]) -> Result<ParsedPolynomial> {
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        let mut sign = if self.eat('-') {
            -BigInt::one()
        } else {
            self.eat('+');
            BigInt::one()
        };
        loop {
            let (c, m) = self.term(names)?;
            let entry = terms.entry(m).or_insert_with(BigInt::zero);
            *entry += sign * c;
            if self.eat('+') {
                sign = BigInt::one();
            } else if self.eat('-') {
                sign = -BigInt::one();
            } else {
                break;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(ParsedPolynomial {
            nvars: names.len(),
            terms,
        })
    }

    /// Comma-separated homogeneous polynomials up to `;`.
    fn polynomial_list(&mut self, names: &[String]) -> Result<Vec<ParsedPolynomial>> {
        let mut out = Vec::new();
        if self.eat(';') {
            return Ok(out);
        }
        loop {
            let (line, _) = self.here();
            let p = self.polynomial(names)?;
            if !p.is_homogeneous() {
                return Err(Error::NonHomogeneous {
                    line,
                    message: format!("{} mixes degrees", p.render(names)),
                });
            }
            out.push(p);
            if self.eat(';') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }
}

/// Parses the text format described in the module documentation.
pub fn parse_input(text: &str) -> Result<InputDescription> {
    let tokens = lex(text)?;
    let end = tokens.last().map_or((1, 1), |t| (t.line, t.column + 1));
    let mut p = Parser { tokens, pos: 0, end };

    match p.ident() {
        Ok((kw, ..)) if kw == "ring" => {}
        _ => {
            p.pos = 0;
            return p.error("input must start with 'ring'");
        }
    }
    let mut variables: Vec<String> = Vec::new();
    loop {
        let (name, line, column) = p.ident()?;
        if variables.contains(&name) {
            return Err(Error::Parse {
                line,
                column,
                message: format!("variable {name} declared twice"),
            });
        }
        variables.push(name);
        if p.eat(';') {
            break;
        }
        p.expect(',')?;
    }

    let mut desc = InputDescription {
        variables,
        ideal: Vec::new(),
        extra: Vec::new(),
        order: None,
        module: None,
    };
    let names = desc.variables.clone();
    while p.peek().is_some() {
        let (kw, line, column) = p.ident()?;
        match kw.as_str() {
            "ideal" => desc.ideal.extend(p.polynomial_list(&names)?),
            "extra" => desc.extra.extend(p.polynomial_list(&names)?),
            "order" => {
                let mut ranked = Vec::new();
                loop {
                    let (name, l, c) = p.ident()?;
                    let v = names.iter().position(|n| *n == name).ok_or(Error::UnknownVariable {
                        name,
                        line: l,
                        column: c,
                    })?;
                    ranked.push(v);
                    if p.eat(';') {
                        break;
                    }
                    p.expect('<')?;
                }
                if MonomialOrder::degrevlex(ranked.clone()).is_err() || ranked.len() != names.len() {
                    return Err(Error::Parse {
                        line,
                        column,
                        message: "order must rank every variable exactly once".into(),
                    });
                }
                desc.order = Some(ranked);
            }
            "module" => {
                if desc.module.is_some() {
                    return Err(Error::Parse {
                        line,
                        column,
                        message: "only one module block is allowed".into(),
                    });
                }
                let (kind, ..) = p.ident()?;
                match kind.as_str() {
                    "cyclic" => desc.module = Some(ModuleBlock::Cyclic(p.polynomial_list(&names)?)),
                    "gens" => {
                        let mut degrees = Vec::new();
                        loop {
                            degrees.push(p.small_int()?);
                            if p.eat(';') {
                                break;
                            }
                            p.expect(',')?;
                        }
                        desc.module = Some(ModuleBlock::Presentation {
                            generator_degrees: degrees,
                            relations: Vec::new(),
                        });
                    }
                    _ => {
                        p.pos -= 1;
                        return p.error("expected 'gens' or 'cyclic'");
                    }
                }
            }
            "rel" => {
                let Some(ModuleBlock::Presentation {
                    generator_degrees,
                    relations,
                }) = &mut desc.module
                else {
                    return Err(Error::Parse {
                        line,
                        column,
                        message: "'rel' needs a preceding 'module gens'".into(),
                    });
                };
                let entries = p.polynomial_list(&names)?;
                if entries.len() != generator_degrees.len() {
                    return Err(Error::Parse {
                        line,
                        column,
                        message: format!(
                            "relation has {} entries for {} generators",
                            entries.len(),
                            generator_degrees.len()
                        ),
                    });
                }
                let mut degree = None;
                for (k, e) in entries.iter().enumerate() {
                    if let Some(d) = e.degree() {
                        if *degree.get_or_insert(d + generator_degrees[k]) != d + generator_degrees[k] {
                            return Err(Error::NonHomogeneous {
                                line,
                                message: "relation entries have inconsistent degrees".into(),
                            });
                        }
                    }
                }
                relations.push(entries);
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("unknown statement '{kw}'"),
                })
            }
        }
    }
    Ok(desc)
}

/// Parses one polynomial over the given variables.
pub fn parse_polynomial(variables: &[String], text: &str) -> Result<ParsedPolynomial> {
    let tokens = lex(text)?;
    let end = tokens.last().map_or((1, 1), |t| (t.line, t.column + 1));
    let mut p = Parser { tokens, pos: 0, end };
    let poly = p.polynomial(variables)?;
    if p.peek().is_some() {
        return p.error("trailing input");
    }
    Ok(poly)
}
