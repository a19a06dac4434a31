use super::{FockState, Monomial};

/// Reference implementation of [`super::apply_monomial`] by literal
/// anticommutation.
///
/// The state is kept as the ordered list of creation operators acting on the
/// vacuum. Each operator of the string is applied one at a time, rightmost
/// first, and the sign flips once for every creation operator it has to be
/// moved past to reach its slot.
pub fn sign_brute_force(m: &Monomial, f: &FockState) -> Option<(i8, FockState)> {
    let n_sp = f.n_sp();
    let mut ops: Vec<usize> = f.occupied();
    let mut sign: i8 = 1;

    // b_P = a_w … a_v a_u: a_u acts first.
    for &o in m.annihilations() {
        if o >= n_sp {
            return None;
        }
        let pos = ops.iter().position(|&x| x == o)?;
        for _ in 0..pos {
            sign = -sign;
        }
        ops.remove(pos);
    }
    // b†_Q = a†_p a†_q … a†_r: a†_r acts first.
    for &o in m.creations().iter().rev() {
        if o >= n_sp || ops.contains(&o) {
            return None;
        }
        ops.insert(0, o);
        let mut i = 0;
        while i + 1 < ops.len() && ops[i] > ops[i + 1] {
            ops.swap(i, i + 1);
            sign = -sign;
            i += 1;
        }
    }
    let out = FockState::from_occupied(n_sp, &ops).ok()?;
    Some((sign, out))
}
