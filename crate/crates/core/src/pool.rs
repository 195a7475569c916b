/// Runs `f` on a dedicated rayon pool of `threads` workers, or on the
/// global pool when `threads` is `None`.
pub(crate) fn install<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(t) if t > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("failed to build thread pool")
            .install(f),
        _ => f(),
    }
}
