//! The defining relation families: four from the Serre presentation of
//! g_0 and twelve involving the J-images of the generators.

use std::fmt;

/// One of the six generator series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenTag {
    H,
    E,
    F,
    JH,
    JE,
    JF,
}

impl GenTag {
    pub const ALL: [GenTag; 6] = [GenTag::H, GenTag::E, GenTag::F, GenTag::JH, GenTag::JE, GenTag::JF];

    pub fn is_j(self) -> bool {
        matches!(self, GenTag::JH | GenTag::JE | GenTag::JF)
    }

    /// The same series without the J.
    pub fn plain(self) -> GenTag {
        match self {
            GenTag::JH => GenTag::H,
            GenTag::JE => GenTag::E,
            GenTag::JF => GenTag::F,
            t => t,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GenTag::H => "h",
            GenTag::E => "e",
            GenTag::F => "f",
            GenTag::JH => "Jh",
            GenTag::JE => "Je",
            GenTag::JF => "Jf",
        }
    }

    /// `Je_2` style label with a 1-based index.
    pub fn label(self, index: usize) -> String {
        format!("{}_{}", self.name(), index + 1)
    }
}

impl fmt::Display for GenTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Right-hand side of `[X_i, Y_j] = rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rhs {
    Zero,
    /// `sign * delta_ij * G_i`
    Delta(GenTag, i64),
    /// `sign * c_ji * G_j`
    Cartan(GenTag, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Family {
    pub id: &'static str,
    pub formula: &'static str,
    pub x: GenTag,
    pub y: GenTag,
    pub rhs: Rhs,
    /// Part of the presentation of g_0 rather than a J-relation.
    pub classical: bool,
}

const fn fam(id: &'static str, formula: &'static str, x: GenTag, y: GenTag, rhs: Rhs, classical: bool) -> Family {
    Family {
        id,
        formula,
        x,
        y,
        rhs,
        classical,
    }
}

use GenTag::*;

pub const FAMILIES: [Family; 16] = [
    fam("h-h", "[h_i,h_j] = 0", H, H, Rhs::Zero, true),
    fam("e-f", "[e_i,f_j] = delta_ij h_i", E, F, Rhs::Delta(H, 1), true),
    fam("h-e", "[h_i,e_j] = c_ji e_j", H, E, Rhs::Cartan(E, 1), true),
    fam("h-f", "[h_i,f_j] = -c_ji f_j", H, F, Rhs::Cartan(F, -1), true),
    fam("h-Jh", "[h_i,Jh_j] = 0", H, JH, Rhs::Zero, false),
    fam("Jh-h", "[Jh_i,h_j] = 0", JH, H, Rhs::Zero, false),
    fam("Jh-Jh", "[Jh_i,Jh_j] = 0", JH, JH, Rhs::Zero, false),
    fam("Je-f", "[Je_i,f_j] = delta_ij Jh_i", JE, F, Rhs::Delta(JH, 1), false),
    fam("e-Jf", "[e_i,Jf_j] = delta_ij Jh_i", E, JF, Rhs::Delta(JH, 1), false),
    fam("Je-Jf", "[Je_i,Jf_j] = -delta_ij h_i", JE, JF, Rhs::Delta(H, -1), false),
    fam("h-Je", "[h_i,Je_j] = c_ji Je_j", H, JE, Rhs::Cartan(JE, 1), false),
    fam("Jh-e", "[Jh_i,e_j] = c_ji Je_j", JH, E, Rhs::Cartan(JE, 1), false),
    fam("Jh-Je", "[Jh_i,Je_j] = -c_ji e_j", JH, JE, Rhs::Cartan(E, -1), false),
    fam("h-Jf", "[h_i,Jf_j] = -c_ji Jf_j", H, JF, Rhs::Cartan(JF, -1), false),
    fam("Jh-f", "[Jh_i,f_j] = -c_ji Jf_j", JH, F, Rhs::Cartan(JF, -1), false),
    fam("Jh-Jf", "[Jh_i,Jf_j] = c_ji f_j", JH, JF, Rhs::Cartan(F, 1), false),
];

/// Instances of the Serre family for the ordered pair `(i, j)`: the series
/// `(a, b)` with `(ad a_i)^{1-c_ji}(b_j) = 0`.
pub const SERRE_PAIRS: [(GenTag, GenTag); 8] = [
    (E, E),
    (E, JE),
    (JE, E),
    (JE, JE),
    (F, F),
    (F, JF),
    (JF, F),
    (JF, JF),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub family: String,
    pub formula: String,
    pub instances_checked: usize,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
