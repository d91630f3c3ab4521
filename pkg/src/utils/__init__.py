"""Configuration, errors and logging setup"""
