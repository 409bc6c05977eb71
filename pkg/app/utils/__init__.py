from .enumeration import box_states, chunked, graded_states

__all__ = ["box_states", "chunked", "graded_states"]
