from shared.config.runtime_config import configure_logging, default_prime_ticks, max_cells

__all__ = ['configure_logging', 'default_prime_ticks', 'max_cells']
