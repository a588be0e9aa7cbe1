use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::mv::MvAlgebra;

/// An MV term in the core signature `0, 1, xᵢ, ¬, ⊕`. The derived
/// connectives are expanded when terms are built:
///
/// * `a ⊙ b = ¬(¬a ⊕ ¬b)`
/// * `a ⊖ b = a ⊙ ¬b`
/// * `a ∨ b = ¬(¬a ⊕ b) ⊕ b`
/// * `a ∧ b = ¬(¬a ∨ ¬b)`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MvTerm {
    Zero,
    One,
    /// Variable `x_i`, 1-based.
    Var(usize),
    Neg(Box<MvTerm>),
    Plus(Box<MvTerm>, Box<MvTerm>),
}

impl MvTerm {
    pub fn var(i: usize) -> Self {
        MvTerm::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(t: MvTerm) -> Self {
        MvTerm::Neg(Box::new(t))
    }

    pub fn plus(a: MvTerm, b: MvTerm) -> Self {
        MvTerm::Plus(Box::new(a), Box::new(b))
    }

    pub fn times(a: MvTerm, b: MvTerm) -> Self {
        Self::neg(Self::plus(Self::neg(a), Self::neg(b)))
    }

    pub fn minus(a: MvTerm, b: MvTerm) -> Self {
        Self::times(a, Self::neg(b))
    }

    pub fn join(a: MvTerm, b: MvTerm) -> Self {
        Self::plus(Self::neg(Self::plus(Self::neg(a), b.clone())), b)
    }

    pub fn meet(a: MvTerm, b: MvTerm) -> Self {
        Self::neg(Self::join(Self::neg(a), Self::neg(b)))
    }

    /// Largest variable index occurring (0 for closed terms).
    pub fn arity(&self) -> usize {
        match self {
            MvTerm::Zero | MvTerm::One => 0,
            MvTerm::Var(i) => *i,
            MvTerm::Neg(a) => a.arity(),
            MvTerm::Plus(a, b) => a.arity().max(b.arity()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            MvTerm::Zero | MvTerm::One | MvTerm::Var(_) => 1,
            MvTerm::Neg(a) => 1 + a.size(),
            MvTerm::Plus(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Replaces `x_i` by `subst[i-1]`; variables beyond the list are kept.
    pub fn substitute(&self, subst: &[MvTerm]) -> MvTerm {
        match self {
            MvTerm::Zero => MvTerm::Zero,
            MvTerm::One => MvTerm::One,
            MvTerm::Var(i) => subst.get(i - 1).cloned().unwrap_or(MvTerm::Var(*i)),
            MvTerm::Neg(a) => Self::neg(a.substitute(subst)),
            MvTerm::Plus(a, b) => Self::plus(a.substitute(subst), b.substitute(subst)),
        }
    }

    /// Evaluates in the standard MV-algebra `[0,1]` at rational arguments.
    pub fn eval_rational(&self, args: &[Rational]) -> Result<Rational> {
        Ok(match self {
            MvTerm::Zero => Rational::zero(),
            MvTerm::One => Rational::one(),
            MvTerm::Var(i) => {
                args.get(i - 1).cloned().ok_or(Error::VariableOutOfRange { index: *i, arity: args.len() })?
            }
            MvTerm::Neg(a) => Rational::one() - a.eval_rational(args)?,
            MvTerm::Plus(a, b) => (a.eval_rational(args)? + b.eval_rational(args)?).min(Rational::one()),
        })
    }

    /// Evaluates in an arbitrary MV-algebra.
    pub fn eval_in<A: MvAlgebra>(&self, alg: &A, args: &[A::Elem]) -> Result<A::Elem> {
        Ok(match self {
            MvTerm::Zero => alg.zero(),
            MvTerm::One => alg.one(),
            MvTerm::Var(i) => {
                args.get(i - 1).cloned().ok_or(Error::VariableOutOfRange { index: *i, arity: args.len() })?
            }
            MvTerm::Neg(a) => alg.neg(&a.eval_in(alg, args)?),
            MvTerm::Plus(a, b) => alg.oplus(&a.eval_in(alg, args)?, &b.eval_in(alg, args)?),
        })
    }
}

impl fmt::Display for MvTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MvTerm::Zero => write!(f, "0"),
            MvTerm::One => write!(f, "1"),
            MvTerm::Var(i) => write!(f, "x{i}"),
            MvTerm::Neg(a) => write!(f, "~{a}"),
            MvTerm::Plus(a, b) => write!(f, "({a} (+) {b})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Plus,
    Join,
    Meet,
    Minus,
    Times,
}

impl Op {
    fn level(self) -> u8 {
        match self {
            Op::Plus => 0,
            Op::Join | Op::Meet => 1,
            Op::Minus | Op::Times => 2,
        }
    }

    fn apply(self, a: MvTerm, b: MvTerm) -> MvTerm {
        match self {
            Op::Plus => MvTerm::plus(a, b),
            Op::Join => MvTerm::join(a, b),
            Op::Meet => MvTerm::meet(a, b),
            Op::Minus => MvTerm::minus(a, b),
            Op::Times => MvTerm::times(a, b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Op(Op),
    Not,
    Zero,
    One,
    Var(usize),
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    const OPS: [(&str, Op); 10] = [
        ("(+)", Op::Plus),
        ("(-)", Op::Minus),
        ("(.)", Op::Times),
        ("⊕", Op::Plus),
        ("⊖", Op::Minus),
        ("⊙", Op::Times),
        ("∨", Op::Join),
        ("∧", Op::Meet),
        ("v", Op::Join),
        ("^", Op::Meet),
    ];
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < src.len() {
        let rest = &src[i..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        for (sym, op) in OPS {
            if rest.starts_with(sym) {
                out.push((i, Tok::Op(op)));
                i += sym.len();
                continue 'outer;
            }
        }
        let tok = match c {
            '~' | '¬' => Tok::Not,
            '0' => Tok::Zero,
            '1' => Tok::One,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'x' => {
                let digits: String = rest[1..].chars().take_while(char::is_ascii_digit).collect();
                if digits.is_empty() {
                    return Err(Error::Syntax { pos: i, msg: "expected digits after 'x'".into() });
                }
                let idx: usize =
                    digits.parse().map_err(|_| Error::Syntax { pos: i, msg: "variable index too large".into() })?;
                if idx == 0 {
                    return Err(Error::Syntax { pos: i, msg: "variables are numbered from x1".into() });
                }
                out.push((i, Tok::Var(idx)));
                i += 1 + digits.len();
                continue;
            }
            _ => return Err(Error::Syntax { pos: i, msg: format!("unexpected character '{c}'") }),
        };
        out.push((i, tok));
        i += c.len_utf8();
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    arity: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn expr(&mut self, min_level: u8) -> Result<MvTerm> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Op(op)) = self.peek().cloned() {
            if op.level() < min_level {
                break;
            }
            self.pos += 1;
            let rhs = self.expr(op.level() + 1)?;
            lhs = op.apply(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<MvTerm> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(Error::Syntax { pos: at, msg: "unexpected end of input".into() });
        };
        self.pos += 1;
        match tok {
            Tok::Not => Ok(MvTerm::neg(self.unary()?)),
            Tok::Zero => Ok(MvTerm::Zero),
            Tok::One => Ok(MvTerm::One),
            Tok::Var(i) => {
                if i > self.arity {
                    Err(Error::VariableOutOfRange { index: i, arity: self.arity })
                } else {
                    Ok(MvTerm::Var(i))
                }
            }
            Tok::LParen => {
                let inner = self.expr(0)?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(Error::Syntax { pos: self.offset(), msg: "expected ')'".into() }),
                }
            }
            Tok::RParen | Tok::Op(_) => Err(Error::Syntax { pos: at, msg: "expected a term".into() }),
        }
    }
}

/// Parses a term over variables `x1..x{arity}`.
///
/// Binary operators are left-associative. Binding strength, tightest first:
/// `~`, then `(.)` and `(-)`, then `^` and `v`, then `(+)`.
pub fn parse_term(src: &str, arity: usize) -> Result<MvTerm> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len(), arity };
    let t = p.expr(0)?;
    if p.pos != p.toks.len() {
        return Err(Error::Syntax { pos: p.offset(), msg: "unexpected trailing input".into() });
    }
    Ok(t)
}

/// A random term in variables `x1..xn` with nesting depth at most `depth`.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, n: usize, depth: usize) -> MvTerm {
    let leaf = |rng: &mut R| match rng.random_range(0..8) {
        0 => MvTerm::Zero,
        1 => MvTerm::One,
        _ => MvTerm::Var(rng.random_range(1..=n.max(1))),
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.random_range(0..10) {
        0 | 1 => leaf(rng),
        2 => MvTerm::neg(random_term(rng, n, depth - 1)),
        op => {
            let a = random_term(rng, n, depth - 1);
            let b = random_term(rng, n, depth - 1);
            match op {
                3..=5 => MvTerm::plus(a, b),
                6 => MvTerm::times(a, b),
                7 => MvTerm::minus(a, b),
                8 => MvTerm::join(a, b),
                _ => MvTerm::meet(a, b),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn parses_examples() {
        let x1 = MvTerm::var(1);
        let x2 = MvTerm::var(2);
        assert_eq!(parse_term("x1 (+) x1", 1).unwrap(), MvTerm::plus(x1.clone(), x1.clone()));
        assert_eq!(parse_term("~ 0", 1).unwrap(), MvTerm::neg(MvTerm::Zero));
        assert_eq!(
            parse_term("(x1 (-) x2) v 0", 2).unwrap(),
            MvTerm::join(MvTerm::minus(x1.clone(), x2.clone()), MvTerm::Zero)
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let v = MvTerm::var;
        assert_eq!(parse_term("x1 (+) x2 (.) x3", 3).unwrap(), MvTerm::plus(v(1), MvTerm::times(v(2), v(3))));
        assert_eq!(parse_term("x1 (-) x2 (-) x3", 3).unwrap(), MvTerm::minus(MvTerm::minus(v(1), v(2)), v(3)));
        assert_eq!(parse_term("x1 v x2 ^ x3", 3).unwrap(), MvTerm::meet(MvTerm::join(v(1), v(2)), v(3)));
        assert_eq!(parse_term("~x1 (.) x2", 2).unwrap(), MvTerm::times(MvTerm::neg(v(1)), v(2)));
        assert_eq!(parse_term("x1 ⊕ ¬x2", 2).unwrap(), parse_term("x1 (+) ~x2", 2).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_term("x3", 2), Err(Error::VariableOutOfRange { index: 3, arity: 2 }));
        assert!(matches!(parse_term("x1 (+)", 1), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(parse_term("(x1", 1), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_term("x1 ? x1", 1), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_term("x", 1), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_term("x1 x1", 1), Err(Error::Syntax { pos: 3, .. })));
    }

    #[test]
    fn display_round_trips() {
        let mut rng = rand::rng();
        for _ in 0..50 {
            let t = random_term(&mut rng, 3, 4);
            assert_eq!(parse_term(&t.to_string(), 3).unwrap(), t);
        }
    }

    #[test]
    fn rational_evaluation() {
        let t = parse_term("(x1 (-) x2) v (x2 (-) x1)", 2).unwrap();
        assert_eq!(t.eval_rational(&[rat(3, 4), rat(1, 4)]).unwrap(), rat(1, 2));
        let t = parse_term("x1 (+) x1", 1).unwrap();
        assert_eq!(t.eval_rational(&[rat(1, 3)]).unwrap(), rat(2, 3));
        assert_eq!(t.eval_rational(&[rat(2, 3)]).unwrap(), rat(1, 1));
    }

    #[test]
    fn substitution() {
        let t = parse_term("(x1 (-) x2) (+) (x2 (-) x1)", 2).unwrap();
        let s = t.substitute(&[MvTerm::var(1), MvTerm::var(1)]);
        assert_eq!(s.arity(), 1);
        assert_eq!(s.eval_rational(&[rat(2, 7)]).unwrap(), rat(0, 1));
    }
}
