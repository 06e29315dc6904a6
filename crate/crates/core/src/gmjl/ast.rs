use std::collections::BTreeSet;
use std::fmt;

/// Formula tree. `And`, `Implies`, `M` and `GM` are sugar; [`Formula::expand`]
/// rewrites them into the core constructors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// True at `i` when more than `n` neighbours satisfy the operand.
    Diamond(u64, Box<Formula>),
    /// At least half of the neighbours.
    W(Box<Formula>),
    /// More than `n` nodes of the whole graph.
    E(u64, Box<Formula>),
    /// At least half of all nodes.
    GW(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// More than half of the neighbours.
    M(Box<Formula>),
    /// More than half of all nodes.
    GM(Box<Formula>),
}

const KEYWORDS: [&str; 4] = ["W", "M", "GW", "GM"];

/// Identifiers made of ASCII letters, digits and `_`, not starting with a
/// digit, other than the operator keywords and `E_…`.
pub fn is_valid_atom(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&name)
        && !name.starts_with("E_")
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn negate(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn diamond(n: u64, a: Formula) -> Formula {
        Formula::Diamond(n, Box::new(a))
    }

    pub fn w(a: Formula) -> Formula {
        Formula::W(Box::new(a))
    }

    pub fn m(a: Formula) -> Formula {
        Formula::M(Box::new(a))
    }

    pub fn e(n: u64, a: Formula) -> Formula {
        Formula::E(n, Box::new(a))
    }

    pub fn gw(a: Formula) -> Formula {
        Formula::GW(Box::new(a))
    }

    pub fn gm(a: Formula) -> Formula {
        Formula::GM(Box::new(a))
    }

    /// Equivalent formula over `Atom`, `Not`, `Or`, `Diamond`, `W`, `E`, `GW`.
    pub fn expand(&self) -> Formula {
        use Formula::*;
        match self {
            Atom(p) => Atom(p.clone()),
            Not(a) => Formula::negate(a.expand()),
            Or(a, b) => Formula::or(a.expand(), b.expand()),
            Diamond(n, a) => Formula::diamond(*n, a.expand()),
            W(a) => Formula::w(a.expand()),
            E(n, a) => Formula::e(*n, a.expand()),
            GW(a) => Formula::gw(a.expand()),
            And(a, b) => Formula::negate(Formula::or(
                Formula::negate(a.expand()),
                Formula::negate(b.expand()),
            )),
            Implies(a, b) => Formula::or(Formula::negate(a.expand()), b.expand()),
            M(a) => Formula::negate(Formula::w(Formula::negate(a.expand()))),
            GM(a) => Formula::negate(Formula::gw(Formula::negate(a.expand()))),
        }
    }

    pub fn is_core(&self) -> bool {
        use Formula::*;
        match self {
            Atom(_) => true,
            Not(a) | Diamond(_, a) | W(a) | E(_, a) | GW(a) => a.is_core(),
            Or(a, b) => a.is_core() && b.is_core(),
            And(..) | Implies(..) | M(_) | GM(_) => false,
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        use Formula::*;
        match self {
            Atom(p) => {
                out.insert(p.clone());
            }
            Not(a) | Diamond(_, a) | W(a) | E(_, a) | GW(a) | M(a) | GM(a) => a.collect_atoms(out),
            Or(a, b) | And(a, b) | Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, context: u8) -> fmt::Result {
        use Formula::*;
        let paren = self.precedence() < context;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Atom(p) => f.write_str(p)?,
            Not(a) => {
                f.write_str("~")?;
                a.write_at(f, 4)?;
            }
            Diamond(n, a) => {
                write!(f, "<>{n} ")?;
                a.write_at(f, 4)?;
            }
            E(n, a) => {
                write!(f, "E_{n} ")?;
                a.write_at(f, 4)?;
            }
            W(a) | M(a) | GW(a) | GM(a) => {
                let op = match self {
                    W(_) => "W",
                    M(_) => "M",
                    GW(_) => "GW",
                    _ => "GM",
                };
                write!(f, "{op} ")?;
                a.write_at(f, 4)?;
            }
            // `->` associates to the right, `|` and `&` to the left
            Implies(a, b) => {
                a.write_at(f, 2)?;
                f.write_str(" -> ")?;
                b.write_at(f, 1)?;
            }
            Or(a, b) => {
                a.write_at(f, 2)?;
                f.write_str(" | ")?;
                b.write_at(f, 3)?;
            }
            And(a, b) => {
                a.write_at(f, 3)?;
                f.write_str(" & ")?;
                b.write_at(f, 4)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Minimal parenthesisation; the output parses back to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
