//! Exact arithmetic for arithmetically equivalent function fields over
//! `F_2(T)`: finite fields, Artin–Schreier towers, splitting of primes,
//! Witt vectors, Goss zeta coefficients and the group theory behind them.

pub mod galois;
pub mod gassmann;
pub mod goss;
pub mod paperlab;
pub mod splitting;
pub mod text;
pub mod tower;
pub mod witt;
