//! The measure-spec mini-language.
//!
//! ```text
//! m := zero | cantor | delta(a) | gauss(center, scale) | box(a, b)
//!    | atoms[(a, w), (a, re, im), ...]
//!    | sum[c * m, m, ...] | restrict(m, a, b)
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::intervals::SetOfIntervals;
use crate::measure::{Atom, Measure};

/// Samples per Gaussian density, over `center ± 8·scale`.
pub const GAUSS_POINTS: usize = 4097;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(f64),
    Punct(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if "()[],*".contains(c) {
            out.push(Token {
                tok: Tok::Punct(c),
                line: l0,
                column: c0,
            });
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || c == '.' || c == '-' || c == '+' {
            i += 1;
            while i < chars.len() {
                let d = chars[i];
                let exp_sign = (d == '-' || d == '+') && matches!(chars[i - 1], 'e' | 'E');
                if d.is_ascii_alphanumeric() || d == '.' || exp_sign {
                    i += 1;
                } else {
                    break;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v: f64 = text.parse().map_err(|_| Error::Parse {
                line: l0,
                column: c0,
                message: format!("invalid number {text:?}"),
            })?;
            out.push(Token {
                tok: Tok::Num(v),
                line: l0,
                column: c0,
            });
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
        } else {
            return Err(Error::Parse {
                line: l0,
                column: c0,
                message: format!("unexpected character {c:?}"),
            });
        }
        col += i - start;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Parse {
            line,
            column,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn punct(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Punct(d)) if *d == c => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(format!("expected '{c}'")),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<f64> {
        match self.peek() {
            Some(Tok::Num(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail("expected a number"),
        }
    }

    /// Wraps a construction error at the position of its arguments.
    fn build<T>(&self, at: (usize, usize), r: Result<T>) -> Result<T> {
        r.map_err(|e| Error::Parse {
            line: at.0,
            column: at.1,
            message: e.to_string(),
        })
    }

    fn measure(&mut self) -> Result<Measure> {
        let at = self.here();
        let name = match self.peek() {
            Some(Tok::Ident(s)) => s.clone(),
            _ => return self.fail("expected a measure"),
        };
        self.pos += 1;
        match name.as_str() {
            "zero" => Ok(Measure::zero()),
            "cantor" => Ok(Measure::cantor()),
            "delta" => {
                self.punct('(')?;
                let a = self.number()?;
                self.punct(')')?;
                Ok(Measure::delta(a))
            }
            "gauss" => {
                self.punct('(')?;
                let c = self.number()?;
                self.punct(',')?;
                let s = self.number()?;
                self.punct(')')?;
                if !(s > 0.0 && s.is_finite()) {
                    return Err(Error::Parse {
                        line: at.0,
                        column: at.1,
                        message: "gauss scale must be positive".into(),
                    });
                }
                let spec = self.build(at, GridSpec::linspace(c - 8.0 * s, c + 8.0 * s, GAUSS_POINTS))?;
                Ok(Measure::gaussian(c, s, Complex64::new(1.0, 0.0), spec))
            }
            "box" => {
                self.punct('(')?;
                let a = self.number()?;
                self.punct(',')?;
                let b = self.number()?;
                self.punct(')')?;
                if !(a < b) {
                    return Err(Error::Parse {
                        line: at.0,
                        column: at.1,
                        message: "box needs a < b".into(),
                    });
                }
                let spec = self.build(at, GridSpec::linspace(a, b, 2))?;
                let set = self.build(at, SetOfIntervals::interval(a, b))?;
                Ok(Measure::lebesgue(spec).restrict(&set))
            }
            "atoms" => {
                self.punct('[')?;
                let mut atoms = Vec::new();
                if !self.eat(']') {
                    loop {
                        self.punct('(')?;
                        let a = self.number()?;
                        self.punct(',')?;
                        let re = self.number()?;
                        let im = if self.eat(',') { self.number()? } else { 0.0 };
                        self.punct(')')?;
                        atoms.push(Atom::new(a, Complex64::new(re, im)));
                        if self.eat(']') {
                            break;
                        }
                        self.punct(',')?;
                    }
                }
                self.build(at, Measure::atoms(atoms))
            }
            "sum" => {
                self.punct('[')?;
                let mut terms = Vec::new();
                if !self.eat(']') {
                    loop {
                        let c = if let Some(Tok::Num(_)) = self.peek() {
                            let c = self.number()?;
                            self.punct('*')?;
                            c
                        } else {
                            1.0
                        };
                        terms.push((Complex64::new(c, 0.0), self.measure()?));
                        if self.eat(']') {
                            break;
                        }
                        self.punct(',')?;
                    }
                }
                if terms.is_empty() {
                    return Ok(Measure::zero());
                }
                self.build(at, Measure::sum(terms))
            }
            "restrict" => {
                self.punct('(')?;
                let m = self.measure()?;
                self.punct(',')?;
                let a = self.number()?;
                self.punct(',')?;
                let b = self.number()?;
                self.punct(')')?;
                let set = self.build(at, SetOfIntervals::interval(a, b))?;
                Ok(m.restrict(&set))
            }
            other => Err(Error::Parse {
                line: at.0,
                column: at.1,
                message: format!("unknown measure {other:?}"),
            }),
        }
    }
}

pub fn parse_measure(src: &str) -> Result<Measure> {
    let toks = lex(src)?;
    let last_line = src.lines().count().max(1);
    let last_col = src.lines().last().map_or(0, |l| l.chars().count()) + 1;
    let mut p = Parser {
        toks,
        pos: 0,
        end: (last_line, last_col),
    };
    let m = p.measure()?;
    if p.pos < p.toks.len() {
        return p.fail("trailing input");
    }
    Ok(m)
}
