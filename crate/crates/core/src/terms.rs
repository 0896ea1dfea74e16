//! Terms and identities over the single binary operation `▷`, written `*`.
//!
//! Grammar:
//!
//! ```text
//! identity := term '=' term
//! term     := atom ('*' term)?        -- '*' is right-associative
//! atom     := VAR | '(' term ')'
//! VAR      := a single ASCII letter
//! ```
//!
//! Whitespace is ignored. `x*y*z` parses as `x*(y*z)`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::table::Quandle;

pub const MAX_VARIABLES: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// Index into the owning identity's variable list.
    Var(usize),
    Op(Box<Term>, Box<Term>),
}

impl Term {
    pub fn op(left: Term, right: Term) -> Term {
        Term::Op(Box::new(left), Box::new(right))
    }

    pub fn eval(&self, q: &Quandle, assignment: &[usize]) -> usize {
        match self {
            Term::Var(v) => assignment[*v],
            Term::Op(l, r) => q.op(l.eval(q, assignment), r.eval(q, assignment)),
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::Op(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    fn write(&self, names: &[char], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{}", names[*v]),
            Term::Op(l, r) => {
                if matches!(**l, Term::Op(..)) {
                    f.write_str("(")?;
                    l.write(names, f)?;
                    f.write_str(")")?;
                } else {
                    l.write(names, f)?;
                }
                f.write_str("*")?;
                r.write(names, f)
            }
        }
    }
}

/// `lhs = rhs`, with variables numbered by first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    pub vars: Vec<char>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected {found:?} at position {pos}, expected {expected}")]
    Unexpected {
        pos: usize,
        found: char,
        expected: &'static str,
    },
    #[error("unexpected end of input at position {pos}, expected {expected}")]
    UnexpectedEnd { pos: usize, expected: &'static str },
    #[error("empty {side} side at position {pos}")]
    EmptySide { side: &'static str, pos: usize },
    #[error("more than {MAX_VARIABLES} distinct variables (at position {pos})")]
    TooManyVariables { pos: usize },
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    vars: &'a mut Vec<char>,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.at).copied()
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |(p, _)| p)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let left = self.atom()?;
        if let Some((_, '*')) = self.peek() {
            self.at += 1;
            let right = self.term()?;
            return Ok(Term::op(left, right));
        }
        Ok(left)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd {
                pos: self.end,
                expected: "a variable or '('",
            }),
            Some((_, '(')) => {
                self.at += 1;
                let inner = self.term()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    Some((pos, found)) => Err(ParseError::Unexpected {
                        pos,
                        found,
                        expected: "')' or '*'",
                    }),
                    None => Err(ParseError::UnexpectedEnd {
                        pos: self.end,
                        expected: "')'",
                    }),
                }
            }
            Some((pos, c)) if c.is_ascii_alphabetic() => {
                self.at += 1;
                let index = match self.vars.iter().position(|&v| v == c) {
                    Some(i) => i,
                    None => {
                        if self.vars.len() == MAX_VARIABLES {
                            return Err(ParseError::TooManyVariables { pos });
                        }
                        self.vars.push(c);
                        self.vars.len() - 1
                    }
                };
                Ok(Term::Var(index))
            }
            Some((pos, found)) => Err(ParseError::Unexpected {
                pos,
                found,
                expected: "a variable or '('",
            }),
        }
    }
}

/// Parses `lhs = rhs`. Positions in errors are byte offsets into `src`.
pub fn parse_identity(src: &str) -> Result<Identity, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let eq = chars.iter().position(|&(_, c)| c == '=');
    let Some(eq) = eq else {
        // parse what is there to report the most useful error
        let mut vars = Vec::new();
        let mut p = Parser {
            chars: chars.clone(),
            at: 0,
            vars: &mut vars,
            end: src.len(),
        };
        if chars.is_empty() {
            return Err(ParseError::EmptySide { side: "left", pos: 0 });
        }
        p.term()?;
        return Err(match p.peek() {
            Some((pos, found)) => ParseError::Unexpected {
                pos,
                found,
                expected: "'*' or '='",
            },
            None => ParseError::UnexpectedEnd {
                pos: src.len(),
                expected: "'='",
            },
        });
    };
    let eq_pos = chars[eq].0;
    let (left, right) = (chars[..eq].to_vec(), chars[eq + 1..].to_vec());
    if left.is_empty() {
        return Err(ParseError::EmptySide { side: "left", pos: eq_pos });
    }
    if right.is_empty() {
        return Err(ParseError::EmptySide {
            side: "right",
            pos: src.len(),
        });
    }
    let mut vars = Vec::new();
    let lhs = parse_side(left, eq_pos, &mut vars, "'*' or '='")?;
    let rhs = parse_side(right, src.len(), &mut vars, "'*' or end of input")?;
    Ok(Identity { lhs, rhs, vars })
}

fn parse_side(
    chars: Vec<(usize, char)>,
    end: usize,
    vars: &mut Vec<char>,
    trailing: &'static str,
) -> Result<Term, ParseError> {
    let mut p = Parser {
        chars,
        at: 0,
        vars,
        end,
    };
    let t = p.term()?;
    if let Some((pos, found)) = p.peek() {
        return Err(ParseError::Unexpected {
            pos,
            found,
            expected: trailing,
        });
    }
    debug_assert_eq!(p.pos(), end);
    Ok(t)
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.lhs.write(&self.vars, f)?;
        f.write_str(" = ")?;
        self.rhs.write(&self.vars, f)
    }
}

impl Identity {
    pub fn mediality() -> Identity {
        parse_identity("(x*y)*(z*w) = (x*z)*(y*w)").expect("valid identity")
    }

    pub fn two_reductivity() -> Identity {
        parse_identity("(x*y)*z = y*z").expect("valid identity")
    }

    pub fn involutory() -> Identity {
        parse_identity("x*(x*y) = y").expect("valid identity")
    }

    pub fn idempotence() -> Identity {
        parse_identity("x*x = x").expect("valid identity")
    }

    /// Variables occurring in either side, as indices into `vars`.
    pub fn used_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.lhs.collect_vars(&mut out);
        self.rhs.collect_vars(&mut out);
        out
    }

    /// Visits every assignment in lexicographic order until `visit` returns
    /// `false`. Returns the assignment that stopped the walk.
    fn walk_assignments(
        &self,
        n: usize,
        mut visit: impl FnMut(&[usize]) -> bool,
    ) -> Option<Vec<usize>> {
        let k = self.vars.len();
        let mut a = vec![0usize; k];
        loop {
            if !visit(&a) {
                return Some(a);
            }
            // increment, last variable fastest
            let mut i = k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                a[i] += 1;
                if a[i] < n {
                    break;
                }
                a[i] = 0;
            }
        }
    }
}

/// Outcome of an identity check; `witness` is the first failing assignment
/// (one value per variable, in the identity's variable order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

pub fn satisfies_identity(q: &Quandle, id: &Identity) -> IdentityCheck {
    let witness = id.walk_assignments(q.order(), |a| id.lhs.eval(q, a) == id.rhs.eval(q, a));
    IdentityCheck {
        holds: witness.is_none(),
        witness,
    }
}

/// All pairs `(lhs(a), rhs(a))` over every assignment `a`, deduplicated and
/// sorted.
pub fn instantiate_identity_pairs(q: &Quandle, ids: &[Identity]) -> Vec<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    for id in ids {
        id.walk_assignments(q.order(), |a| {
            pairs.insert((id.lhs.eval(q, a), id.rhs.eval(q, a)));
            true
        });
    }
    pairs.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(i: usize) -> Term {
        Term::Var(i)
    }

    #[test]
    fn two_reductivity_parses() {
        let id = parse_identity("(x*y)*z = y*z").unwrap();
        assert_eq!(id.vars, vec!['x', 'y', 'z']);
        assert_eq!(id.lhs, Term::op(Term::op(var(0), var(1)), var(2)));
        assert_eq!(id.rhs, Term::op(var(1), var(2)));
    }

    #[test]
    fn mediality_parses() {
        let id = parse_identity("(x*y)*(z*w) = (x*z)*(y*w)").unwrap();
        assert_eq!(id.vars, vec!['x', 'y', 'z', 'w']);
        assert_eq!(
            id.rhs,
            Term::op(Term::op(var(0), var(2)), Term::op(var(1), var(3)))
        );
    }

    #[test]
    fn star_is_right_associative() {
        let id = parse_identity("x*y*z = (x*y)*(x*z)").unwrap();
        assert_eq!(id.lhs, Term::op(var(0), Term::op(var(1), var(2))));
        assert_eq!(id.to_string(), "x*y*z = (x*y)*x*z");
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(
            parse_identity(" ( x * y ) *z=y *  z").unwrap(),
            parse_identity("(x*y)*z = y*z").unwrap()
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse_identity("x*y = ").unwrap_err(),
            ParseError::EmptySide { side: "right", pos: 6 }
        );
        assert_eq!(
            parse_identity(" = x").unwrap_err(),
            ParseError::EmptySide { side: "left", pos: 1 }
        );
        assert_eq!(
            parse_identity("x*1 = x").unwrap_err(),
            ParseError::Unexpected {
                pos: 2,
                found: '1',
                expected: "a variable or '('"
            }
        );
        assert!(matches!(
            parse_identity("(x*y = x").unwrap_err(),
            ParseError::UnexpectedEnd { pos: 5, .. }
        ));
        assert!(matches!(
            parse_identity("x*y").unwrap_err(),
            ParseError::UnexpectedEnd { .. }
        ));
        assert!(matches!(
            parse_identity("x y = x").unwrap_err(),
            ParseError::Unexpected { pos: 2, found: 'y', .. }
        ));
    }

    #[test]
    fn variable_cap() {
        let letters: Vec<char> = ('a'..='z').chain('A'..='B').collect();
        let lhs: Vec<String> = letters.iter().map(|c| c.to_string()).collect();
        let src = format!("{} = a", lhs.join("*"));
        assert!(matches!(
            parse_identity(&src).unwrap_err(),
            ParseError::TooManyVariables { .. }
        ));
        let ok: Vec<String> = letters[..26].iter().map(|c| c.to_string()).collect();
        assert_eq!(parse_identity(&format!("{} = a", ok.join("*"))).unwrap().vars.len(), 26);
    }

    #[test]
    fn satisfaction_examples() {
        let medial = Identity::mediality();
        assert!(satisfies_identity(&Quandle::trivial(3), &medial).holds);
        assert!(satisfies_identity(&Quandle::dihedral(3), &medial).holds);
        let check = satisfies_identity(&Quandle::dihedral(3), &Identity::two_reductivity());
        assert!(!check.holds);
        assert_eq!(check.witness, Some(vec![0, 1, 0]));
    }

    #[test]
    fn instantiated_pairs() {
        let r3 = Quandle::dihedral(3);
        let medial = instantiate_identity_pairs(&r3, &[Identity::mediality()]);
        assert!(medial.iter().all(|(a, b)| a == b));
        let red = instantiate_identity_pairs(&r3, &[Identity::two_reductivity()]);
        assert!(red.contains(&(1, 2)));
        let one = instantiate_identity_pairs(&Quandle::trivial(1), &[Identity::two_reductivity()]);
        assert_eq!(one, vec![(0, 0)]);
    }

    #[test]
    fn idempotence_always_holds() {
        for q in [Quandle::dihedral(5), Quandle::trivial(2)] {
            assert!(satisfies_identity(&q, &Identity::idempotence()).holds);
        }
    }
}
