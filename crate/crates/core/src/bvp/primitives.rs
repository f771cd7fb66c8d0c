use crate::field::{parity_split, ScalarField};
use crate::ivp::SOLVE_RTOL;
use crate::numerics::hermite::primitive;
use crate::problem::BvpProblem;

/// Cells of every primitive table.
pub const PRIMITIVE_CELLS: usize = 4096;

/// `A = ∫₀ᵗ a`, `B = ∫₀ᵗ b` and `B_e = ∫₀ᵗ b_o`, the even part of `B`.
#[allow(non_snake_case)]
#[derive(Debug, Clone)]
pub struct Primitives {
    pub A: ScalarField,
    pub B: ScalarField,
    pub b_e: ScalarField,
}

impl Primitives {
    pub fn new(a: &ScalarField, b: &ScalarField) -> Self {
        let b_odd = match parity_split(b) {
            Ok(p) => p.odd,
            // non-symmetric domains have no parity; B_e degenerates to B
            Err(_) => b.clone(),
        };
        Self {
            A: primitive(a, 0.0, PRIMITIVE_CELLS, SOLVE_RTOL),
            B: primitive(b, 0.0, PRIMITIVE_CELLS, SOLVE_RTOL),
            b_e: primitive(&b_odd, 0.0, PRIMITIVE_CELLS, SOLVE_RTOL),
        }
    }

    pub fn of(p: &BvpProblem) -> Self {
        Self::new(&p.a, &p.b)
    }
}
