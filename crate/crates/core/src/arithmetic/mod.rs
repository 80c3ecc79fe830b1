//! Elementary number theory: totient and Möbius sieves, Farey fractions and
//! Dirichlet character tables.

mod characters;
mod farey;
mod sieve;

pub use characters::{character_table, Character, CharacterTable, Parity};
pub use farey::{farey_sequence, FareyFraction};
pub use sieve::{gcd, prime_factors, sieve_tables, ArithmeticTables};
