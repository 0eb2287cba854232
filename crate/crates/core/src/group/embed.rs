use std::sync::Arc;

use super::{Group, Subgroup};
use crate::construct::SubgroupSign;
use crate::perm;
use crate::{Error, Result};

/// The copy of `S_{n-2}` inside `A_n` and its parity character.
#[derive(Debug, Clone)]
pub struct ParityEmbedding {
    pub subgroup: Subgroup,
    pub sign: SubgroupSign,
    /// Generators whose closure is the subgroup.
    pub generators: Vec<usize>,
}

/// Even permutations of `{1..n}` that preserve `{1, 2}` setwise.
///
/// Such an `h` acts on `{3..n}` by an arbitrary permutation and swaps 1 and 2
/// exactly when that action is odd. `φ(h) = +1` iff `h` fixes 1 and 2.
pub fn embed_parity_subgroup_an(group: &Arc<Group>) -> Result<ParityEmbedding> {
    let n = group.alternating_degree().ok_or_else(|| {
        Error::InvalidInput(format!("{} is not an alternating group", group.spec()))
    })?;
    if n < 4 {
        return Err(Error::InvalidInput(format!(
            "the parity embedding needs n >= 4, got {n}"
        )));
    }
    let fix_pair = |mut p: Vec<u8>| {
        if !perm::is_even(&p) {
            p = perm::compose(
                &[1, 0].iter().copied().chain(2..n as u8).collect::<Vec<_>>(),
                &p,
            );
        }
        group.perm_id(&p).expect("even permutation")
    };
    // S_{n-2} on {3..n} is generated by (3 4) and (3 4 .. n).
    let mut transposition = perm::identity(n);
    transposition.swap(2, 3);
    let mut cycle = perm::identity(n);
    for (i, slot) in cycle.iter_mut().enumerate().skip(2) {
        *slot = if i + 1 < n { (i + 1) as u8 } else { 2 };
    }
    let generators = vec![fix_pair(transposition), fix_pair(cycle)];
    let subgroup = Subgroup::closure(group, &generators)?;
    let values: Vec<(usize, i8)> = subgroup
        .members()
        .iter()
        .map(|&h| {
            let p = group.perm(h).expect("permutation group");
            (h, if p[0] == 0 { 1 } else { -1 })
        })
        .collect();
    let sign = SubgroupSign::new(&subgroup, &values)?;
    Ok(ParityEmbedding {
        subgroup,
        sign,
        generators,
    })
}
