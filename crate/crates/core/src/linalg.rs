//! Exact Gaussian elimination over a field.

use crate::scalar::ExactField;

/// Reduced row echelon form, grown one row at a time.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    cols: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: ExactField> Echelon<F> {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[F])> {
        self.pivots.iter().copied().zip(self.rows.iter().map(Vec::as_slice))
    }

    /// Reduces `row` against the current basis in place.
    pub fn reduce(&self, row: &mut [F]) {
        for (basis, &pc) in self.rows.iter().zip(&self.pivots) {
            if row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for (x, b) in row.iter_mut().zip(basis) {
                if !b.is_zero() {
                    *x = x.clone() - f.clone() * b.clone();
                }
            }
        }
    }

    /// Adds a row; returns the new pivot column, or `None` if the row was dependent.
    pub fn insert(&mut self, mut row: Vec<F>) -> Option<usize> {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.reduce(&mut row);
        let c = row.iter().position(|x| !x.is_zero())?;
        let inv = F::one() / row[c].clone();
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for other in self.rows.iter_mut() {
            if other[c].is_zero() {
                continue;
            }
            let f = other[c].clone();
            for (x, b) in other.iter_mut().zip(&row) {
                if !b.is_zero() {
                    *x = x.clone() - f.clone() * b.clone();
                }
            }
        }
        self.rows.push(row);
        self.pivots.push(c);
        Some(c)
    }

    /// Basis of the kernel, one vector per free column in increasing column order.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        self.nullspace_of_first(self.cols)
    }

    fn nullspace_of_first(&self, vars: usize) -> Vec<Vec<F>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..vars)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![F::zero(); vars];
                v[f] = F::one();
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    if pc < vars && !row[f].is_zero() {
                        v[pc] = -row[f].clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Solution set `particular + span(basis)` of a linear system.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSpace<F> {
    pub particular: Vec<F>,
    pub basis: Vec<Vec<F>>,
}

impl<F: ExactField> AffineSpace<F> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn vars(&self) -> usize {
        self.particular.len()
    }

    /// The point of the space with parameters `lambda`.
    pub fn point(&self, lambda: &[F]) -> Vec<F> {
        let mut v = self.particular.clone();
        for (b, l) in self.basis.iter().zip(lambda) {
            if l.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.clone() + l.clone() * y.clone();
                }
            }
        }
        v
    }

    /// The form restricted to the space: constant term, then one coefficient per parameter.
    pub fn restrict(&self, form: &[(usize, F)]) -> (F, Vec<F>) {
        let eval = |v: &[F]| form.iter().fold(F::zero(), |acc, (i, c)| acc + c.clone() * v[*i].clone());
        (eval(&self.particular), self.basis.iter().map(|b| eval(b)).collect())
    }

    /// Whether the form vanishes at every point of the space.
    pub fn vanishes(&self, form: &[(usize, F)]) -> bool {
        let (c, coeffs) = self.restrict(form);
        c.is_zero() && coeffs.iter().all(|x| x.is_zero())
    }
}

/// Solves `A x = b` given as rows `(a, b)`; `None` if inconsistent.
pub fn solve<F: ExactField>(vars: usize, rows: impl IntoIterator<Item = (Vec<F>, F)>) -> Option<AffineSpace<F>> {
    let mut ech = Echelon::new(vars + 1);
    for (mut a, b) in rows {
        a.push(b);
        if ech.insert(a) == Some(vars) {
            return None;
        }
    }
    let mut particular = vec![F::zero(); vars];
    for (pc, row) in ech.rows() {
        particular[pc] = row[vars].clone();
    }
    Some(AffineSpace { particular, basis: ech.nullspace_of_first(vars) })
}

/// Kernel of the homogeneous system with the given rows.
pub fn kernel<F: ExactField>(vars: usize, rows: impl IntoIterator<Item = Vec<F>>) -> AffineSpace<F> {
    let mut ech = Echelon::new(vars);
    for r in rows {
        ech.insert(r);
    }
    AffineSpace { particular: vec![F::zero(); vars], basis: ech.nullspace() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(v: i64) -> Q {
        Q::from_integer(v)
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        let k = kernel(3, rows.clone());
        assert_eq!(k.dimension(), 1);
        for r in &rows {
            let dot = r.iter().zip(&k.basis[0]).fold(q(0), |a, (x, y)| a + *x * *y);
            assert_eq!(dot, q(0));
        }
    }

    #[test]
    fn inconsistent_system() {
        let rows = vec![(vec![q(1), q(1)], q(1)), (vec![q(2), q(2)], q(3))];
        assert!(solve(2, rows).is_none());
    }

    #[test]
    fn unique_solution() {
        let rows = vec![(vec![q(2), q(1)], q(5)), (vec![q(1), q(-1)], q(1))];
        let s = solve(2, rows).unwrap();
        assert_eq!(s.dimension(), 0);
        assert_eq!(s.particular, vec![q(2), q(1)]);
    }

    #[test]
    fn restricted_forms() {
        let s = solve(3, vec![(vec![q(1), q(0), q(-1)], q(0))]).unwrap();
        assert_eq!(s.dimension(), 2);
        assert!(s.vanishes(&[(0, q(1)), (2, q(-1))]));
        assert!(!s.vanishes(&[(0, q(1)), (1, q(-1))]));
    }
}
