"""RealignBound - realignment criterion bounds, extremal states and searches"""
__version__ = "0.1.0"
