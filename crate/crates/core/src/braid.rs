//! Stitch action sequences and their braid words.
//!
//! An interaction works two pairs (four threads). With the pairs at strand
//! positions `2i..=2i+3`, a cross is `σ_{2i+1}` and a twist of both pairs is
//! `σ_{2i}⁻¹ σ_{2i+2}⁻¹`. Twisting one pair alone keeps only its factor.

use std::fmt;
use std::str::FromStr;

use crate::error::LaceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    Cross,
    Twist,
    TwistLeft,
    TwistRight,
    Pin,
}

impl Action {
    pub const ALL: [Action; 5] = [
        Action::Cross,
        Action::Twist,
        Action::TwistLeft,
        Action::TwistRight,
        Action::Pin,
    ];

    /// File symbol: `C`, `T`, `L`, `R` or `p`.
    pub fn symbol(self) -> char {
        match self {
            Action::Cross => 'C',
            Action::Twist => 'T',
            Action::TwistLeft => 'L',
            Action::TwistRight => 'R',
            Action::Pin => 'p',
        }
    }

    pub fn from_symbol(c: char) -> Result<Action, LaceError> {
        Ok(match c {
            'C' => Action::Cross,
            'T' => Action::Twist,
            'L' => Action::TwistLeft,
            'R' => Action::TwistRight,
            'p' => Action::Pin,
            other => return Err(LaceError::UnknownAction(other)),
        })
    }
}

/// The ζ annotation of one vertex, stored verbatim.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionSequence(pub Vec<Action>);

impl ActionSequence {
    pub fn actions(&self) -> &[Action] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One symbol per action, so `TL` reads as a twist followed by a left twist.
impl FromStr for ActionSequence {
    type Err = LaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(Action::from_symbol)
            .collect::<Result<_, _>>()
            .map(ActionSequence)
    }
}

impl fmt::Display for ActionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|a| write!(f, "{}", a.symbol()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BraidLetter {
    Generator { position: u32, sign: Sign },
    Pin,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BraidWord(pub Vec<BraidLetter>);

impl BraidWord {
    pub fn letters(&self) -> &[BraidLetter] {
        &self.0
    }

    pub fn generators(&self) -> impl Iterator<Item = (u32, Sign)> + '_ {
        self.0.iter().filter_map(|l| match *l {
            BraidLetter::Generator { position, sign } => Some((position, sign)),
            BraidLetter::Pin => None,
        })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for letter in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            match letter {
                BraidLetter::Generator {
                    position,
                    sign: Sign::Positive,
                } => write!(f, "s{position}")?,
                BraidLetter::Generator {
                    position,
                    sign: Sign::Negative,
                } => write!(f, "s{position}^-1")?,
                BraidLetter::Pin => f.write_str("<pin>")?,
            }
        }
        Ok(())
    }
}

/// Expand an action sequence for the interaction at pair index `i`.
pub fn to_braid_word(seq: &ActionSequence, i: u32) -> BraidWord {
    let neg = |position| BraidLetter::Generator {
        position,
        sign: Sign::Negative,
    };
    let mut word = Vec::with_capacity(seq.0.len() * 2);
    for action in &seq.0 {
        match action {
            Action::Cross => word.push(BraidLetter::Generator {
                position: 2 * i + 1,
                sign: Sign::Positive,
            }),
            Action::Twist => {
                word.push(neg(2 * i));
                word.push(neg(2 * i + 2));
            }
            Action::TwistLeft => word.push(neg(2 * i)),
            Action::TwistRight => word.push(neg(2 * i + 2)),
            Action::Pin => word.push(BraidLetter::Pin),
        }
    }
    BraidWord(word)
}

/// Positive generators only at odd positions, negative only at even ones.
pub fn is_alternating(w: &BraidWord) -> bool {
    w.generators().all(|(position, sign)| match sign {
        Sign::Positive => position % 2 == 1,
        Sign::Negative => position % 2 == 0,
    })
}
