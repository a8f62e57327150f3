use std::fmt;

/// A generator of one of the presented algebras.
///
/// `XB(i)` is the conjugate of `X(i)`; indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Gen {
    XB(u8),
    X(u8),
    Alpha,
    AlphaBar,
    Gamma,
    GammaBar,
    T,
    ABar,
    A,
    BBar,
    B,
}

impl Gen {
    pub fn star(self) -> Gen {
        match self {
            Gen::XB(i) => Gen::X(i),
            Gen::X(i) => Gen::XB(i),
            Gen::Alpha => Gen::AlphaBar,
            Gen::AlphaBar => Gen::Alpha,
            Gen::Gamma => Gen::GammaBar,
            Gen::GammaBar => Gen::Gamma,
            Gen::T => Gen::T,
            Gen::ABar => Gen::A,
            Gen::A => Gen::ABar,
            Gen::BBar => Gen::B,
            Gen::B => Gen::BBar,
        }
    }

    pub fn name(self) -> String {
        match self {
            Gen::XB(i) => format!("xb{i}"),
            Gen::X(i) => format!("x{i}"),
            Gen::Alpha => "alpha".into(),
            Gen::AlphaBar => "alphab".into(),
            Gen::Gamma => "gamma".into(),
            Gen::GammaBar => "gammab".into(),
            Gen::T => "t".into(),
            Gen::ABar => "ab".into(),
            Gen::A => "a".into(),
            Gen::BBar => "bb".into(),
            Gen::B => "b".into(),
        }
    }

    pub fn from_name(s: &str) -> Option<Gen> {
        let indexed = |rest: &str| -> Option<u8> {
            if rest.is_empty() || rest.starts_with('0') {
                return None;
            }
            rest.parse::<u8>().ok()
        };
        Some(match s {
            "alpha" => Gen::Alpha,
            "alphab" => Gen::AlphaBar,
            "gamma" => Gen::Gamma,
            "gammab" => Gen::GammaBar,
            "t" => Gen::T,
            "ab" => Gen::ABar,
            "a" => Gen::A,
            "bb" => Gen::BBar,
            "b" => Gen::B,
            _ => {
                if let Some(rest) = s.strip_prefix("xb") {
                    Gen::XB(indexed(rest)?)
                } else if let Some(rest) = s.strip_prefix('x') {
                    Gen::X(indexed(rest)?)
                } else {
                    return None;
                }
            }
        })
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A monomial; the empty word is the unit.
pub type Word = Vec<Gen>;

pub fn render_word(w: &[Gen]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|g| g.name()).collect::<Vec<_>>().join("*")
}

/// Star of a word: reverse and conjugate each letter.
pub fn star_word(w: &[Gen]) -> Word {
    w.iter().rev().map(|g| g.star()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        let all = [
            Gen::XB(1), Gen::X(4), Gen::Alpha, Gen::AlphaBar, Gen::Gamma,
            Gen::GammaBar, Gen::T, Gen::ABar, Gen::A, Gen::BBar, Gen::B,
        ];
        for g in all {
            assert_eq!(Gen::from_name(&g.name()), Some(g));
            assert_eq!(g.star().star(), g);
        }
        assert_eq!(Gen::from_name("x0"), None);
        assert_eq!(Gen::from_name("y"), None);
    }
}
