use crate::algebra::{Domain, ExactMatrix};
use crate::incidence::{IncidenceMatrix01, IncidenceSystem};

use super::TheoremError;

/// `λ·J_v + (r-λ)·I_v` over ℤ.
fn expected_gram(v: usize, r: usize, lambda: usize) -> ExactMatrix {
    ExactMatrix::build(v, v, Domain::Integer, |i, j| if i == j { r } else { lambda })
        .expect("integers are integers")
}

fn integer_gram(n: &IncidenceMatrix01) -> ExactMatrix {
    let n = n.lift(Domain::Integer).into_matrix();
    n.mul(&n.transpose()).expect("N and Nᵀ are conformable")
}

/// Regular pairwise balanced design ⇒ `N·Nᵀ = λJ + (r-λ)I`. Returns
/// `(r, λ)` after checking the identity entry by entry.
pub fn pbd_characterization_reverse(s: &IncidenceSystem) -> Result<(usize, usize), TheoremError> {
    let class = s.classify();
    let r = class
        .regular_r
        .ok_or_else(|| TheoremError::HypothesisFailed("not regular: replication numbers differ".into()))?;
    let lambda = class
        .pbd_lambda
        .ok_or_else(|| TheoremError::HypothesisFailed("not pairwise balanced with λ ≥ 1".into()))?;
    let gram = integer_gram(&s.incidence_matrix(Domain::Integer));
    let expected = expected_gram(s.v(), r, lambda);
    for i in 0..s.v() {
        for j in 0..s.v() {
            if gram.get(i, j) != expected.get(i, j) {
                return Err(TheoremError::IdentityViolated {
                    row: i,
                    col: j,
                    expected: expected.get(i, j).to_string(),
                    found: gram.get(i, j).to_string(),
                });
            }
        }
    }
    Ok((r, lambda))
}

/// `N·Nᵀ = λJ + (r-λ)I` with positive `r`, `λ` ⇒ `N` is the incidence
/// matrix of a regular pairwise balanced design with those parameters.
pub fn pbd_characterization_forward(
    m: &IncidenceMatrix01,
    r: usize,
    lambda: usize,
) -> Result<IncidenceSystem, TheoremError> {
    if r == 0 || lambda == 0 {
        return Err(TheoremError::HypothesisFailed(format!("r = {r} and λ = {lambda} must be positive")));
    }
    let gram = integer_gram(m);
    let expected = expected_gram(m.rows(), r, lambda);
    if gram != expected {
        let (i, j) = (0..m.rows())
            .flat_map(|i| (0..m.rows()).map(move |j| (i, j)))
            .find(|&(i, j)| gram.get(i, j) != expected.get(i, j))
            .expect("matrices differ somewhere");
        return Err(TheoremError::NotRegularPbdMatrix(format!(
            "entry ({i},{j}) of N·Nᵀ is {}, expected {}",
            gram.get(i, j),
            expected.get(i, j)
        )));
    }
    let system = m.to_system();
    let class = system.classify();
    if class.regular_r != Some(r) && system.v() > 0 {
        return Err(TheoremError::Inconsistent(format!("classified r = {:?}, expected {r}", class.regular_r)));
    }
    if system.v() >= 2 && class.pbd_lambda != Some(lambda) {
        return Err(TheoremError::Inconsistent(format!(
            "classified λ = {:?}, expected {lambda}",
            class.pbd_lambda
        )));
    }
    Ok(system)
}
