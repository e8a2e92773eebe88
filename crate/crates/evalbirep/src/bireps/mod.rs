//! The birepresentations on projective modules over the zigzag algebras and
//! the checks built on them.

pub mod diagrams;
pub mod endalg;
pub mod lemmas;
pub mod evaluation;
pub mod relations;

pub use diagrams::{Diagram, Evaluator, Letter, Move};
pub use evaluation::{decompose, x_object, x_objects, EvalAction, Generator, XSummand};
pub use relations::{all_relations, relation_suite, Relation};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zigzag::ZigzagAlgebra;

    #[test]
    fn relation_suites() {
        for d in 3..=5 {
            let r = relation_suite(ZigzagAlgebra::finite(d).unwrap(), 0);
            let bad: Vec<_> = r.failures().map(|c| format!("{} {} {}", c.id, c.params, c.detail)).collect();
            assert!(bad.is_empty(), "finite d={d}: {bad:#?}");
        }
        for d in 3..=4 {
            let r = relation_suite(ZigzagAlgebra::affine(d).unwrap(), 0);
            let bad: Vec<_> = r.failures().map(|c| format!("{} {} {}", c.id, c.params, c.detail)).collect();
            assert!(bad.is_empty(), "affine d={d}: {bad:#?}");
        }
    }
}
