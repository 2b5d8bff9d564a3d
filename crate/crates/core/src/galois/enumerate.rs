use super::{FieldRef, Poly};

/// Monic polynomials of degree exactly `d`, ordered by the integer value
/// `sum idx(c_i) q^i` of their lower coefficients.
pub fn enumerate_monic_iter(field: FieldRef, d: usize) -> impl Iterator<Item = Poly> {
    let q = field.order_u128().expect("field too large to enumerate");
    let count = q.checked_pow(d as u32).expect("enumeration too large");
    (0..count).map(move |mut n| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(field.element_at(n % q));
            n /= q;
        }
        coeffs.push(field.one());
        Poly::from_coeffs(field.clone(), coeffs)
    })
}

pub fn enumerate_monic(field: FieldRef, d: usize) -> Vec<Poly> {
    enumerate_monic_iter(field, d).collect()
}

/// Monic irreducible polynomials of degree exactly `d`, in enumeration order.
pub fn enumerate_irreducible(field: FieldRef, d: usize) -> Vec<Poly> {
    if d == 0 {
        return Vec::new();
    }
    enumerate_monic_iter(field, d)
        .filter(|p| p.is_irreducible().unwrap_or(false))
        .collect()
}

/// Monic irreducible polynomials of degree `1..=max_deg`, in enumeration order.
pub fn primes_up_to(field: FieldRef, max_deg: usize) -> Vec<Poly> {
    (1..=max_deg)
        .flat_map(|d| enumerate_irreducible(field.clone(), d))
        .collect()
}

/// All monic polynomials of degree `0..=max_deg`, in enumeration order.
pub fn monic_up_to(field: FieldRef, max_deg: usize) -> Vec<Poly> {
    (0..=max_deg)
        .flat_map(|d| enumerate_monic_iter(field.clone(), d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FqField;

    #[test]
    fn degree_one_over_f2() {
        let f2 = FqField::prime(2).unwrap();
        let names: Vec<String> = enumerate_monic(f2.clone(), 1)
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(names, vec!["T", "T+1"]);
        assert_eq!(enumerate_monic(f2, 0)[0].to_string(), "1");
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        let f2 = FqField::prime(2).unwrap();
        let counts: Vec<usize> = (1..=8)
            .map(|d| enumerate_irreducible(f2.clone(), d).len())
            .collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9, 18, 30]);
        assert_eq!(primes_up_to(f2, 8).len(), 71);
        let f4 = FqField::conventional(2, 2).unwrap();
        assert_eq!(enumerate_irreducible(f4, 2).len(), 6);
    }

    #[test]
    fn degree_three_brute_force() {
        let f2 = FqField::prime(2).unwrap();
        let brute: Vec<Poly> = enumerate_monic(f2.clone(), 3)
            .into_iter()
            .filter(|p| {
                enumerate_monic(f2.clone(), 1)
                    .iter()
                    .all(|l| !p.rem(l).is_zero())
            })
            .collect();
        assert_eq!(brute, enumerate_irreducible(f2, 3));
        assert_eq!(brute.len(), 2);
    }
}
