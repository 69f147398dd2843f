#![allow(dead_code)]

pub mod cells;
