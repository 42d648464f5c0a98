//! Atlas records: the serialized form of one isogeny class.

use crate::format_rat;
use basicav_core::slopes::{self, SlopeDatum};
use basicav_core::weil::WeilPolynomial;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    /// Coefficients of the irreducible factor, leading first.
    pub min_poly: Vec<i64>,
    pub multiplicity: u32,
    pub field_degree: u32,
    /// Honda-Tate index of the simple class on this factor.
    pub e: u32,
    /// Dimension of that simple class.
    pub class_dim: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotRecord {
    /// Slope as a lowest-terms rational string.
    pub slope: String,
    pub rank: u32,
    pub conjugate_index: usize,
    pub self_paired: bool,
}

/// One row of the atlas: everything the slope pipeline knows about a single
/// isogeny class, in a stable serializable shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRecord {
    pub q: u64,
    pub p: u64,
    pub s: u32,
    pub g: u32,
    /// a_1 ... a_2g of the monic characteristic polynomial.
    pub coefficients: Vec<i64>,
    pub components: Vec<ComponentRecord>,
    pub slots: Vec<SlotRecord>,
    /// Always true for Frobenius data; recorded so externally assembled
    /// rows share the schema.
    pub is_basic: bool,
    pub is_supersingular: bool,
    pub is_ordinary: bool,
    /// Dimensions of the simple classes with repetition, summing to g.
    /// Populated exactly when the polynomial is a characteristic polynomial
    /// (every factor multiplicity is a multiple of its Honda-Tate index);
    /// a bare Weil polynomial like t^2 - p over F_p has no such splitting.
    pub simple_dims: Vec<u32>,
    /// Whether the polynomial is the characteristic polynomial of an
    /// isogeny class of dimension g (true for every atlas row).
    pub is_char_poly: bool,
    /// True when some component is the rational type pi = +-sqrt(q).
    pub excluded_polarized_case: bool,
}

impl AtlasRecord {
    pub fn build(w: &WeilPolynomial) -> Result<AtlasRecord, slopes::SlopeError> {
        let datum = slope_record(w)?;
        Ok(datum)
    }

    /// CSV row matching [`csv_header`]: slots flatten to slope:rank pairs.
    pub fn csv_row(&self) -> String {
        let coeffs = self
            .coefficients
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let slots = self
            .slots
            .iter()
            .map(|s| format!("{}:{}", s.slope, s.rank))
            .collect::<Vec<_>>()
            .join(";");
        let dims = self
            .simple_dims
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.q,
            self.p,
            self.s,
            self.g,
            coeffs,
            slots,
            self.is_basic,
            self.is_supersingular,
            self.is_ordinary,
            dims,
            self.excluded_polarized_case
        )
    }

    pub fn csv_header() -> &'static str {
        "q,p,s,g,coefficients,slots,is_basic,is_supersingular,is_ordinary,simple_dims,excluded_polarized_case"
    }
}

fn slope_record(w: &WeilPolynomial) -> Result<AtlasRecord, slopes::SlopeError> {
    let datum = slopes::slope_datum(w)?;
    let basic = slopes::is_basic(&datum).basic;
    let supersingular = slopes::is_supersingular(&datum);
    let ordinary = slopes::is_ordinary(&datum);
    let q = w.q();
    let mut simple_dims = Vec::new();
    let mut is_char_poly = true;
    let mut components = Vec::new();
    for (f, mult) in w.irreducible_factors() {
        let cls = slopes::honda_tate(f, q)?;
        if mult % cls.e == 0 {
            for _ in 0..(mult / cls.e) {
                simple_dims.push(cls.dim);
            }
        } else {
            is_char_poly = false;
        }
        components.push(ComponentRecord {
            min_poly: f
                .poly
                .descending_coeffs()
                .iter()
                .map(|c| c.to_i64().expect("component coefficients fit i64"))
                .collect(),
            multiplicity: *mult,
            field_degree: f.poly.deg() as u32,
            e: cls.e,
            class_dim: cls.dim,
        });
    }
    if !is_char_poly {
        simple_dims.clear();
    }
    let excluded = w
        .irreducible_factors()
        .iter()
        .any(|(f, _)| f.kind == basicav_core::weil::WeilKind::Rational);
    Ok(AtlasRecord {
        q: q.q(),
        p: q.p(),
        s: q.s(),
        g: w.g(),
        coefficients: w
            .poly()
            .descending_coeffs()
            .iter()
            .skip(1)
            .map(|c| c.to_i64().expect("atlas coefficients fit i64"))
            .collect(),
        components,
        slots: slot_records(&datum),
        is_basic: basic,
        is_supersingular: supersingular,
        is_ordinary: ordinary,
        simple_dims,
        is_char_poly,
        excluded_polarized_case: excluded,
    })
}

pub fn slot_records(datum: &SlopeDatum) -> Vec<SlotRecord> {
    datum
        .slots
        .iter()
        .map(|slot| SlotRecord {
            slope: format_rat(&slot.slope),
            rank: slot.rank,
            conjugate_index: slot.conjugate,
            self_paired: slot.is_self_paired(),
        })
        .collect()
}
