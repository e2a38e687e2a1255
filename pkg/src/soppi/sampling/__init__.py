from .noise import NoiseTensor, SampleBatch, derive_step_seed, draw_noise, perturb

__all__ = ["NoiseTensor", "SampleBatch", "derive_step_seed", "draw_noise", "perturb"]
