//! Reference constants imported from the literature. They are displayed, and
//! `[H_5]` enters the genus-5 pipeline, but none of them is recomputed here.

use crate::algebra::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceConstant {
    pub name: &'static str,
    pub value: &'static str,
    pub source: &'static str,
    pub tag: &'static str,
}

const TAG: &str = "imported, display-only";

pub fn reference_constants() -> Vec<ReferenceConstant> {
    vec![
        ReferenceConstant {
            name: "taut(T5)",
            value: "2(72 lambda1 lambda2 - 48 lambda3)",
            source: "Faber, tautological projection of the Torelli pullback in genus 5",
            tag: TAG,
        },
        ReferenceConstant {
            name: "taut(T6)",
            value: "2(384 lambda1 lambda2 lambda3 - 1152 lambda2 lambda4 + 474048/691 lambda1 lambda5 - 248064/691 lambda6)",
            source: "Faber, tautological projection of the Torelli pullback in genus 6",
            tag: TAG,
        },
        ReferenceConstant {
            name: "taut(T7)",
            value: "2(768 lambda1 lambda2 lambda3 lambda4 - 6912 lambda2 lambda3 lambda5 + 2209152/691 lambda1 lambda4 lambda5 + 7522176/691 lambda1 lambda3 lambda6 - 8842752/691 lambda4 lambda6 + 968832/691 lambda3 lambda7 - 3276672/691 lambda1 lambda2 lambda7)",
            source: "Faber, tautological projection of the Torelli pullback in genus 7",
            tag: TAG,
        },
        ReferenceConstant {
            name: "[H5]",
            value: "31/30 kappa3",
            source: "SvZ, class of the hyperelliptic locus in M5",
            tag: TAG,
        },
    ]
}

/// `[H_5] = 31/30 κ_3` in `R^3(M_5)`.
pub fn hyperelliptic_locus_g5() -> Rational {
    rat(31, 30)
}
