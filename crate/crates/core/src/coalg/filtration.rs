use crate::exactlin::Subspace;

use super::{CoalgError, DualAlgebra};

/// An ascending chain of subspaces `terms[0] ⊆ terms[1] ⊆ …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationChain {
    pub terms: Vec<Subspace>,
    /// First index from which the chain is constant; `None` if the chain was
    /// cut off before that happened.
    pub stabilized_at: Option<usize>,
}

impl FiltrationChain {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn last(&self) -> Option<&Subspace> {
        self.terms.last()
    }

    /// Builds `terms[n] = annihilated(J^{n+1})` for successive powers of
    /// `radical`, stopping once a term fills its ambient space or the
    /// powers stop shrinking.
    pub(crate) fn from_annihilated_powers<E>(
        dual: &DualAlgebra,
        radical: &Subspace,
        mut annihilated: impl FnMut(&Subspace) -> Result<Subspace, E>,
    ) -> Result<FiltrationChain, E>
    where
        E: From<CoalgError>,
    {
        let mut terms: Vec<Subspace> = Vec::new();
        let mut power = radical.clone();
        // a nilpotent radical of a dim-n algebra has J^{n+1} = 0
        for n in 0..=dual.dim() + 1 {
            let term = annihilated(&power)?;
            let full = term.is_full();
            if terms.last() == Some(&term) {
                return Ok(FiltrationChain { stabilized_at: Some(n - 1), terms });
            }
            terms.push(term);
            if full {
                return Ok(FiltrationChain { stabilized_at: Some(n), terms });
            }
            power = dual.ideal_product(&power, radical)?;
        }
        Ok(FiltrationChain { terms, stabilized_at: None })
    }

    /// Checks `terms[n] ⊆ terms[n+1]`.
    pub fn is_ascending(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[1].contains(&w[0]).unwrap_or(false))
    }
}
