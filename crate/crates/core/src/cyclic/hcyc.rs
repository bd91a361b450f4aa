//! The contraction of the cyclic complex of the standard algebra onto the
//! constant map at a chosen group element: a locally finite telescope of
//! integrated homotopies between consecutive projection steps. Every term
//! of the integrated homotopy carries a factor of the difference of the two
//! maps, so the telescope truncates exactly at the support radius.

use crate::bar::{step_cutoff, step_projection, Anchor, VertexMap};
use crate::chain::Chain;
use crate::cyclic::standard::{cc_map, integrated_lower, integrated_raise};
use crate::cyclic::CyclicForm;
use crate::group::{Elem, GResult, GroupModel};

pub struct CyclicContraction<'g> {
    pub model: &'g GroupModel,
    pub at: Elem,
    anchor: Anchor,
}

impl<'g> CyclicContraction<'g> {
    pub fn new(model: &'g GroupModel, at: &Elem) -> GResult<Self> {
        let anchor = Anchor::for_group(model, at, &model.identity())?;
        Ok(CyclicContraction { model, at: at.clone(), anchor })
    }

    /// The constant-map endomorphism of the standard algebra at `self.at`.
    pub fn constant_map(&self) -> VertexMap<'static> {
        VertexMap::constant(Chain::generator(self.at.clone()))
    }

    /// Induced projection of cyclic forms onto constant tuples.
    pub fn projector(&self, form: &CyclicForm<Elem>) -> Chain<CyclicForm<Elem>> {
        cc_map(&self.constant_map(), form)
    }

    /// The contraction applied to one form: satisfies
    /// `(b+B) h + h (b+B) = id - projector` exactly.
    pub fn apply(&self, form: &CyclicForm<Elem>) -> Chain<CyclicForm<Elem>> {
        let cutoff = form
            .entries
            .iter()
            .map(|g| step_cutoff(self.model, &self.anchor, g))
            .max()
            .unwrap_or(0);
        let mut out = Chain::zero();
        let step0 = step_projection(self.model, &self.anchor, 0).expect("step");
        if matches!(self.anchor, Anchor::Flat { .. }) {
            // the constant map and the 0-step projection differ on the flat
            // backends; bridge them first
            let cst = self.constant_map();
            out.add(&integrated_lower(&cst, &step0, form));
            out.add(&integrated_raise(&cst, &step0, form));
        }
        for n in 0..cutoff {
            let pn = step_projection(self.model, &self.anchor, n).expect("step");
            let pn1 = step_projection(self.model, &self.anchor, n + 1).expect("step");
            out.add(&integrated_lower(&pn, &pn1, form));
            out.add(&integrated_raise(&pn, &pn1, form));
        }
        out
    }

    pub fn apply_chain(&self, c: &Chain<CyclicForm<Elem>>) -> Chain<CyclicForm<Elem>> {
        c.map_linear(|f| self.apply(f))
    }
}
