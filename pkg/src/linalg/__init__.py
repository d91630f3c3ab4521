"""Dense linear algebra and bipartite structure maps"""
